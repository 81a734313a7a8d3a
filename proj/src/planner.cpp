#include "defcon/planner.hpp"

#include <algorithm>
#include <set>

namespace defcon {

namespace {

bool by_id(const DefenseDescriptor& a, const DefenseDescriptor& b) { return a.id < b.id; }

bool is_objective(const Catalog& catalog, std::string_view token) {
    return std::any_of(catalog.descriptors().begin(), catalog.descriptors().end(),
                       [&](const DefenseDescriptor& d) { return d.objective == token; });
}

bool covers(const DefenseDescriptor& d, const std::string& goal) {
    return d.objective == goal || d.protects(goal);
}

std::string join_ids(const std::vector<DefenseDescriptor>& ds) {
    std::string out;
    for (const DefenseDescriptor& d : ds) {
        if (!out.empty()) out += " + ";
        out += d.id;
    }
    return out;
}

// Visits every k-subset of `pool` (k in [lo, hi]) in index-lexicographic order.
void for_each_subset(const std::vector<DefenseDescriptor>& pool, std::size_t lo, std::size_t hi,
                     const std::function<void(const std::vector<DefenseDescriptor>&)>& visit) {
    std::vector<DefenseDescriptor> current;
    const std::function<void(std::size_t)> extend = [&](std::size_t start) {
        if (current.size() >= lo) visit(current);
        if (current.size() == hi) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            current.push_back(pool[i]);
            extend(i + 1);
            current.pop_back();
        }
    };
    extend(0);
}

}  // namespace

Plan Plan::make(std::span<const DefenseDescriptor> ordered) {
    SetTrace trace = predict_set(ordered);
    if (trace.verdict != Verdict::aligned) {
        throw PreconditionError("ordering is not predicted effective");
    }
    return Plan(std::move(trace), viability_advisory(ordered));
}

void for_each_stage_ordering(std::span<const DefenseDescriptor> defenses,
                             const std::function<bool(std::span<const DefenseDescriptor>)>& visit) {
    std::vector<std::vector<DefenseDescriptor>> groups;
    for (const Stage stage : {Stage::pre, Stage::in, Stage::post}) {
        std::vector<DefenseDescriptor> group;
        std::copy_if(defenses.begin(), defenses.end(), std::back_inserter(group),
                     [&](const DefenseDescriptor& d) { return d.stage == stage; });
        if (group.empty()) continue;
        std::sort(group.begin(), group.end(), by_id);
        groups.push_back(std::move(group));
    }

    std::vector<DefenseDescriptor> sequence;
    sequence.reserve(defenses.size());
    // Outer stages vary slowest, which yields lexicographic order on the
    // concatenated id sequence.
    const std::function<bool(std::size_t)> recurse = [&](std::size_t k) -> bool {
        if (k == groups.size()) return visit(sequence);
        auto& group = groups[k];
        do {
            sequence.insert(sequence.end(), group.begin(), group.end());
            const bool keep_going = recurse(k + 1);
            sequence.resize(sequence.size() - group.size());
            if (!keep_going) return false;
        } while (std::next_permutation(group.begin(), group.end(), by_id));
        return true;
    };
    recurse(0);
}

std::optional<Plan> plan_ordering(std::span<const DefenseDescriptor> defenses) {
    if (defenses.size() < kMinPlanSize || defenses.size() > kMaxPlanSize) {
        throw PreconditionError("plan_ordering takes 2 to 8 defenses, got " +
                                std::to_string(defenses.size()));
    }
    check_sequence(defenses, kMinPlanSize, false);

    std::optional<Plan> found;
    for_each_stage_ordering(defenses, [&](std::span<const DefenseDescriptor> ordering) {
        if (predict_set(ordering).verdict != Verdict::aligned) return true;
        found = Plan::make(ordering);
        return false;
    });
    return found;
}

std::vector<DefenseDescriptor> goal_candidates(const Catalog& catalog, const std::string& goal) {
    std::vector<DefenseDescriptor> out;
    for (const DefenseDescriptor& d : catalog.descriptors()) {
        if (covers(d, goal)) out.push_back(d);
    }
    return out;
}

GoalPlanResult plan_for_goals(const GoalQuery& query, const Catalog& catalog) {
    GoalPlanResult result;
    if (query.goals.empty()) {
        result.errors.push_back("no goals given");
        return result;
    }
    if (query.max_defenses == 0 || query.max_defenses > kMaxPlanSize) {
        result.errors.push_back("max defenses must be between 1 and " + std::to_string(kMaxPlanSize));
        return result;
    }

    std::set<std::string> pool_ids;
    for (const std::string& goal : query.goals) {
        if (!is_known_risk(goal) && !is_objective(catalog, goal)) {
            result.errors.push_back("unknown goal '" + goal + "' (neither a risk token nor an objective)");
            continue;
        }
        const auto candidates = goal_candidates(catalog, goal);
        if (candidates.empty()) {
            result.errors.push_back("no defense in the catalog covers goal '" + goal + "'");
        }
        for (const DefenseDescriptor& d : candidates) pool_ids.insert(d.id);
    }
    if (!result.ok()) return result;

    if (query.max_defenses < kMinPlanSize) {
        result.notes.push_back("need >= 2 defenses: single-defense plans are out of scope");
        return result;
    }

    std::vector<DefenseDescriptor> pool;
    for (const DefenseDescriptor& d : catalog.descriptors()) {
        if (pool_ids.contains(d.id)) pool.push_back(d);
    }

    std::size_t covering_subsets = 0;
    for_each_subset(pool, kMinPlanSize, query.max_defenses, [&](const std::vector<DefenseDescriptor>& subset) {
        std::set<std::string_view> objectives;
        for (const DefenseDescriptor& d : subset) {
            if (!objectives.insert(d.objective).second) return;
        }
        for (const std::string& goal : query.goals) {
            if (std::none_of(subset.begin(), subset.end(),
                             [&](const DefenseDescriptor& d) { return covers(d, goal); })) {
                return;
            }
        }
        ++covering_subsets;
        if (auto plan = plan_ordering(subset)) {
            result.plans.push_back(std::move(*plan));
        } else {
            result.notes.push_back(join_ids(subset) + ": every ordering conflicts");
        }
    });

    std::sort(result.plans.begin(), result.plans.end(), [](const Plan& a, const Plan& b) {
        if (a.ordering().size() != b.ordering().size()) return a.ordering().size() < b.ordering().size();
        return a.ordering() < b.ordering();
    });

    if (covering_subsets == 0) {
        result.notes.push_back("no combination of 2 to " + std::to_string(query.max_defenses) +
                               " defenses with distinct objectives covers every goal");
    } else if (result.plans.empty()) {
        result.notes.push_back("no effective combination covers every goal");
    }
    return result;
}

}  // namespace defcon
