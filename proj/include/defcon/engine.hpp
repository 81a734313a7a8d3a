#pragma once

#include "defcon/catalog.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace defcon {

enum class Verdict { aligned, conflict };

/// Which branch of the decision procedure produced a verdict.
enum class FiredStep {
    s1_s2_local_or_none,    // same stage, later defense makes local/no changes
    s1_s2_global_override,  // same stage, later defense makes global changes
    s3_no_risk_used,        // different stages, earlier defense uses no risk
    s4_risk_protected,      // later defense protects against a risk the earlier one uses
    s4_risk_not_protected,
    ext_pair_conflict,      // set-level: some constituent pair conflicts
};

inline constexpr std::array<FiredStep, 6> kAllSteps = {
    FiredStep::s1_s2_local_or_none,  FiredStep::s1_s2_global_override,
    FiredStep::s3_no_risk_used,      FiredStep::s4_risk_protected,
    FiredStep::s4_risk_not_protected, FiredStep::ext_pair_conflict,
};

std::string_view to_string(Verdict v);
/// Step identifier as printed and accepted by the CLI, e.g. "S4_risk_protected".
std::string_view to_string(FiredStep s);
std::optional<FiredStep> parse_step(std::string_view identifier);

/// Fixed rationale template for a step.
std::string_view rationale(FiredStep s);

Verdict verdict_of(FiredStep s);

struct PredictionTrace {
    Verdict verdict = Verdict::aligned;
    FiredStep fired_step = FiredStep::s3_no_risk_used;
    std::string d1_id;
    std::string d2_id;
    std::vector<RiskTag> conflicting_risks;  // qualifiers as declared by d2
    std::string rationale;

    friend bool operator==(const PredictionTrace&, const PredictionTrace&) = default;
};

struct SetTrace {
    Verdict verdict = Verdict::aligned;
    std::vector<std::string> ids;
    std::vector<PredictionTrace> pair_traces;  // (i, j) for i < j, row-major

    /// Pair traces whose verdict is conflict.
    std::vector<const PredictionTrace*> conflicts() const;
};

/// Predicts whether applying `first` and then `second` conflicts.
///
/// Pure function of the two descriptors. Throws PreconditionError when the
/// ids are identical or `second` sits at an earlier stage than `first`.
PredictionTrace predict_pair(const DefenseDescriptor& first, const DefenseDescriptor& second);

/// Mutually-exclusive placement baseline: conflict iff two defenses share a
/// stage. Order-insensitive.
Verdict predict_naive(std::span<const DefenseDescriptor> defenses);

/// Checks every ordered pair of a stage-monotone sequence.
SetTrace predict_set(std::span<const DefenseDescriptor> ordered);

/// Both ids of an unordered catalog pair, in the unique stage-valid order.
using DescriptorPair = std::pair<DefenseDescriptor, DefenseDescriptor>;

/// All pairs of defenses with distinct objectives. Cross-stage pairs put the
/// earlier stage first; same-stage pairs keep catalog order.
std::vector<DescriptorPair> enumerate_pairs(const Catalog& catalog);

enum class Viability { likely_acceptable, likely_degraded, indeterminate };

std::string_view to_string(Viability v);

/// Non-binding utility hint from per-defense utility tags.
Viability viability_advisory(std::span<const DefenseDescriptor> defenses);

/// Throws PreconditionError unless ids are distinct (and, when
/// `require_monotone`, stages never decrease along the sequence).
void check_sequence(std::span<const DefenseDescriptor> defenses, std::size_t min_size,
                    bool require_monotone);

}  // namespace defcon
