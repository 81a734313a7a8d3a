#pragma once

#include "defcon/catalog.hpp"
#include "defcon/engine.hpp"
#include "defcon/groundtruth.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace defcon {

using Rational = boost::rational<std::int64_t>;

enum class Technique { defcon, naive };

std::string_view to_string(Technique t);
std::optional<Technique> parse_technique(std::string_view token);

/// Positive class: effective combination / aligned prediction.
struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t tn = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + tn + fp + fn; }

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws PreconditionError on empty input.
ConfusionMatrix confusion(std::span<const std::pair<Verdict, Label>> scored);

struct BalancedAccuracy {
    Rational value;
    std::optional<Rational> true_positive_rate;  // nullopt when tp + fn == 0
    std::optional<Rational> true_negative_rate;  // nullopt when tn + fp == 0
    bool degenerate = false;                     // only one rate was defined

    /// Round half-up to four places, e.g. "0.8125".
    std::string decimal() const;
    /// Two-place percentage, e.g. "81.25%".
    std::string percent() const;
};

/// Mean of TPR and TNR as an exact rational. When one side has no records the
/// defined rate alone is returned and flagged degenerate. Throws
/// PreconditionError on an all-zero matrix.
BalancedAccuracy balanced_accuracy(const ConfusionMatrix& m);

/// Decimal rendering of a non-negative rational, rounded half-up.
std::string format_decimal(const Rational& r, int places);

struct ReportRow {
    std::string id;
    Verdict prediction = Verdict::aligned;
    Label label = Label::effective;
    std::optional<FiredStep> fired_step;  // DefCon only
    bool match = false;
};

struct EvaluationReport {
    Technique technique = Technique::defcon;
    std::vector<Cohort> cohorts;
    ConfusionMatrix matrix;
    BalancedAccuracy balanced_accuracy;
    std::vector<ReportRow> rows;

    std::string cohort_name() const;
};

/// Scores one technique against the records of the selected cohorts.
/// Throws PreconditionError for an empty selection or unresolved ids.
EvaluationReport evaluate_technique(Technique technique, std::span<const Cohort> cohorts,
                                    const Catalog& catalog,
                                    std::span<const GroundTruthRecord> records);

/// Natural order on record ids: "C2" < "C10" < "T1".
bool record_id_less(std::string_view a, std::string_view b);

}  // namespace defcon
