#include "defcon/engine.hpp"

#include <algorithm>
#include <set>

namespace defcon {

std::string_view to_string(Verdict v) { return v == Verdict::aligned ? "aligned" : "conflict"; }

std::string_view to_string(FiredStep s) {
    switch (s) {
        case FiredStep::s1_s2_local_or_none: return "S1_S2_local_or_none";
        case FiredStep::s1_s2_global_override: return "S1_S2_global_override";
        case FiredStep::s3_no_risk_used: return "S3_no_risk_used";
        case FiredStep::s4_risk_protected: return "S4_risk_protected";
        case FiredStep::s4_risk_not_protected: return "S4_risk_not_protected";
        case FiredStep::ext_pair_conflict: return "EXT_pair_conflict";
    }
    return "?";
}

std::optional<FiredStep> parse_step(std::string_view identifier) {
    for (const FiredStep s : kAllSteps) {
        if (to_string(s) == identifier) return s;
    }
    return std::nullopt;
}

std::string_view rationale(FiredStep s) {
    switch (s) {
        case FiredStep::s1_s2_local_or_none:
            return "Both defenses act in the same stage and the later one makes only local or no "
                   "changes, so it leaves the earlier defense intact.";
        case FiredStep::s1_s2_global_override:
            return "Both defenses act in the same stage and the later one changes the model or "
                   "training data globally, overwriting the earlier defense (catastrophic forgetting).";
        case FiredStep::s3_no_risk_used:
            return "The defenses act in different stages and the earlier one does not rely on any "
                   "risk, so the later defense has nothing to neutralize.";
        case FiredStep::s4_risk_protected:
            return "The earlier defense relies on a risk that the later defense protects against, "
                   "so the later defense weakens it.";
        case FiredStep::s4_risk_not_protected:
            return "The earlier defense relies on a risk that the later defense does not protect "
                   "against, so they do not interfere.";
        case FiredStep::ext_pair_conflict:
            return "At least one pair of defenses in the combination conflicts, so the whole "
                   "combination conflicts.";
    }
    return "";
}

Verdict verdict_of(FiredStep s) {
    switch (s) {
        case FiredStep::s1_s2_global_override:
        case FiredStep::s4_risk_protected:
        case FiredStep::ext_pair_conflict:
            return Verdict::conflict;
        default:
            return Verdict::aligned;
    }
}

std::vector<const PredictionTrace*> SetTrace::conflicts() const {
    std::vector<const PredictionTrace*> out;
    for (const PredictionTrace& t : pair_traces) {
        if (t.verdict == Verdict::conflict) out.push_back(&t);
    }
    return out;
}

void check_sequence(std::span<const DefenseDescriptor> defenses, std::size_t min_size,
                    bool require_monotone) {
    if (defenses.size() < min_size) {
        throw PreconditionError("need at least " + std::to_string(min_size) + " defenses, got " +
                                std::to_string(defenses.size()));
    }
    std::set<std::string_view> ids;
    for (std::size_t i = 0; i < defenses.size(); ++i) {
        if (!ids.insert(defenses[i].id).second) {
            throw PreconditionError("defense '" + defenses[i].id + "' listed more than once");
        }
        if (require_monotone && i > 0 && defenses[i].stage < defenses[i - 1].stage) {
            throw PreconditionError("invalid pipeline order: '" + defenses[i - 1].id + "' (" +
                                    std::string(to_string(defenses[i - 1].stage)) +
                                    ") listed before '" + defenses[i].id + "' (" +
                                    std::string(to_string(defenses[i].stage)) + ")");
        }
    }
}

PredictionTrace predict_pair(const DefenseDescriptor& first, const DefenseDescriptor& second) {
    if (first.id == second.id) {
        throw PreconditionError("defense '" + first.id + "' cannot be combined with itself");
    }
    if (second.stage < first.stage) {
        throw PreconditionError("invalid pipeline order: '" + first.id + "' (" +
                                std::string(to_string(first.stage)) + ") applied before '" +
                                second.id + "' (" + std::string(to_string(second.stage)) + ")");
    }

    PredictionTrace trace;
    trace.d1_id = first.id;
    trace.d2_id = second.id;

    if (first.stage == second.stage) {
        trace.fired_step = second.change == ChangeScope::global ? FiredStep::s1_s2_global_override
                                                                : FiredStep::s1_s2_local_or_none;
    } else if (first.uses_risks.empty()) {
        trace.fired_step = FiredStep::s3_no_risk_used;
    } else {
        for (const std::string& used : first.uses_risks) {
            const auto it = std::find_if(second.protects_risks.begin(), second.protects_risks.end(),
                                         [&](const RiskTag& t) { return t.token == used; });
            if (it != second.protects_risks.end()) trace.conflicting_risks.push_back(*it);
        }
        trace.fired_step = trace.conflicting_risks.empty() ? FiredStep::s4_risk_not_protected
                                                           : FiredStep::s4_risk_protected;
    }
    trace.verdict = verdict_of(trace.fired_step);
    trace.rationale = std::string(rationale(trace.fired_step));
    return trace;
}

Verdict predict_naive(std::span<const DefenseDescriptor> defenses) {
    check_sequence(defenses, 2, false);
    std::set<Stage> stages;
    for (const DefenseDescriptor& d : defenses) {
        if (!stages.insert(d.stage).second) return Verdict::conflict;
    }
    return Verdict::aligned;
}

SetTrace predict_set(std::span<const DefenseDescriptor> ordered) {
    check_sequence(ordered, 2, true);
    SetTrace trace;
    for (const DefenseDescriptor& d : ordered) trace.ids.push_back(d.id);
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        for (std::size_t j = i + 1; j < ordered.size(); ++j) {
            trace.pair_traces.push_back(predict_pair(ordered[i], ordered[j]));
            if (trace.pair_traces.back().verdict == Verdict::conflict) trace.verdict = Verdict::conflict;
        }
    }
    return trace;
}

std::vector<DescriptorPair> enumerate_pairs(const Catalog& catalog) {
    const auto& ds = catalog.descriptors();
    std::vector<DescriptorPair> pairs;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
            if (ds[i].objective == ds[j].objective) continue;
            if (ds[j].stage < ds[i].stage) {
                pairs.emplace_back(ds[j], ds[i]);
            } else {
                pairs.emplace_back(ds[i], ds[j]);
            }
        }
    }
    return pairs;
}

std::string_view to_string(Viability v) {
    switch (v) {
        case Viability::likely_acceptable: return "likely_acceptable";
        case Viability::likely_degraded: return "likely_degraded";
        case Viability::indeterminate: return "indeterminate";
    }
    return "?";
}

Viability viability_advisory(std::span<const DefenseDescriptor> defenses) {
    if (defenses.size() < 2) {
        throw PreconditionError("need at least 2 defenses, got " + std::to_string(defenses.size()));
    }
    const auto degrades = [](const DefenseDescriptor& d) { return d.utility == UtilityImpact::down; };
    if (std::all_of(defenses.begin(), defenses.end(), degrades)) return Viability::likely_degraded;
    if (std::none_of(defenses.begin(), defenses.end(), degrades)) return Viability::likely_acceptable;
    return Viability::indeterminate;
}

}  // namespace defcon
