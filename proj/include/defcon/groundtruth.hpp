#pragma once

#include "defcon/catalog.hpp"
#include "defcon/diagnostic.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace defcon {

enum class Cohort { prior, empirical, scaling, argued };

enum class OutcomeColor { green, orange, red };

enum class Label { effective, ineffective };

inline constexpr std::array<std::string_view, 2> kDatasets = {"fmnist", "utkface"};

struct MetricOutcome {
    std::string dataset;
    std::string metric;
    OutcomeColor color = OutcomeColor::green;

    friend bool operator==(const MetricOutcome&, const MetricOutcome&) = default;
};

struct GroundTruthRecord {
    std::string id;
    std::vector<std::string> defenses;  // pipeline order
    Cohort cohort = Cohort::empirical;
    std::vector<MetricOutcome> outcomes;  // empirical / scaling cohorts
    std::optional<Label> direct_label;    // prior / argued cohorts
    std::string source;

    friend bool operator==(const GroundTruthRecord&, const GroundTruthRecord&) = default;
};

/// Whether a cohort carries a direct label (true) or metric outcomes (false).
bool cohort_uses_direct_label(Cohort c);

/// Worst-case rule: any orange or red cell makes the combination ineffective.
/// Throws PreconditionError when the record carries neither outcomes nor a label.
Label derive_label(const GroundTruthRecord& record);

struct GroundTruthParseResult {
    std::optional<std::vector<GroundTruthRecord>> records;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return records.has_value(); }
};

/// Parses a GTRUTH document. Defense ids and metric tokens are checked
/// against `catalog`.
GroundTruthParseResult parse_groundtruth(std::string_view text, const Catalog& catalog);

std::string serialize_groundtruth(const std::vector<GroundTruthRecord>& records);

/// The 54 built-in records: C1-C8, C9-C38, C39-C44, T1-T10.
const std::vector<GroundTruthRecord>& builtin_groundtruth();
std::string_view builtin_groundtruth_text();

/// Metric tokens named by a catalog's descriptors.
std::vector<std::string> metric_vocabulary(const Catalog& catalog);

std::string_view to_string(Cohort c);
std::string_view to_string(OutcomeColor c);
std::string_view to_string(Label l);

std::optional<Cohort> parse_cohort(std::string_view token);
std::optional<OutcomeColor> parse_color(std::string_view token);
std::optional<Label> parse_label(std::string_view token);

}  // namespace defcon
