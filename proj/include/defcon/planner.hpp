#pragma once

#include "defcon/catalog.hpp"
#include "defcon/engine.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace defcon {

/// A stage-monotone ordering predicted effective.
class Plan {
public:
    /// Re-runs predict_set; throws PreconditionError if the ordering is not
    /// stage-monotone or does not come out aligned.
    static Plan make(std::span<const DefenseDescriptor> ordered);

    const std::vector<std::string>& ordering() const { return trace_.ids; }
    const SetTrace& trace() const { return trace_; }
    Viability advisory() const { return advisory_; }

private:
    Plan(SetTrace trace, Viability advisory) : trace_(std::move(trace)), advisory_(advisory) {}

    SetTrace trace_;
    Viability advisory_;
};

inline constexpr std::size_t kMinPlanSize = 2;
inline constexpr std::size_t kMaxPlanSize = 8;

/// Visits every stage-monotone ordering of `defenses` in lexicographic order
/// of id sequences. The visitor returns false to stop early.
void for_each_stage_ordering(std::span<const DefenseDescriptor> defenses,
                             const std::function<bool(std::span<const DefenseDescriptor>)>& visit);

/// First ordering (in canonical order) that predict_set accepts, if any.
/// Requires 2..8 descriptors with distinct ids.
std::optional<Plan> plan_ordering(std::span<const DefenseDescriptor> defenses);

struct GoalQuery {
    std::vector<std::string> goals;  // risk tokens and/or objective tokens
    std::size_t max_defenses = 4;
};

struct GoalPlanResult {
    std::vector<Plan> plans;
    std::vector<std::string> errors;  // query could not be answered
    std::vector<std::string> notes;   // answered, but with caveats

    bool ok() const { return errors.empty(); }
};

/// Effective combinations covering every goal, at most one defense per
/// objective group, sorted by (size, ids).
GoalPlanResult plan_for_goals(const GoalQuery& query, const Catalog& catalog);

/// Defenses of `catalog` that cover a goal, via protected risk or objective.
std::vector<DefenseDescriptor> goal_candidates(const Catalog& catalog, const std::string& goal);

}  // namespace defcon
