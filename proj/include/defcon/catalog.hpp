#pragma once

#include "defcon/diagnostic.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace defcon {

// Pipeline position. Declaration order is the pipeline order: pre < in < post.
enum class Stage { pre, in, post };

enum class ChangeScope { global, local, none };

enum class UtilityImpact { down, same, up };

enum class MetricDirection { up, down };

// Informational only; the decision kernel ignores it.
enum class RiskQualifier { unspecified, explicit_, unintended };

/// Closed risk vocabulary accepted by the strict parser and the validator.
inline constexpr std::array<std::string_view, 10> kRiskVocabulary = {
    "backdoor",      "adv_example",           "evasion",
    "poisoning",     "extraction",            "membership_inference",
    "data_reconstruction", "unauthorized_data_use", "discrimination",
    "opacity",
};

bool is_known_risk(std::string_view token);

struct RiskTag {
    std::string token;
    RiskQualifier qualifier = RiskQualifier::unspecified;

    friend bool operator==(const RiskTag&, const RiskTag&) = default;
};

struct MetricSpec {
    std::string name;
    MetricDirection direction = MetricDirection::up;

    friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

/// One defense variant as the decision procedure sees it.
///
/// Risk lists keep their authored order (it is what the serializer writes
/// back) but carry set semantics: a token appears at most once.
struct DefenseDescriptor {
    std::string id;            // family.stage[.context]
    std::string family;
    std::string display_name;  // may be empty
    Stage stage = Stage::pre;
    ChangeScope change = ChangeScope::none;
    std::vector<std::string> uses_risks;
    std::vector<RiskTag> protects_risks;
    UtilityImpact utility = UtilityImpact::same;
    std::string objective;
    std::optional<MetricSpec> metric;

    bool protects(std::string_view risk_token) const;

    friend bool operator==(const DefenseDescriptor&, const DefenseDescriptor&) = default;
};

class Catalog {
public:
    Catalog() = default;
    /// Throws PreconditionError on duplicate ids.
    explicit Catalog(std::vector<DefenseDescriptor> descriptors, std::string provenance = {});

    const std::vector<DefenseDescriptor>& descriptors() const { return descriptors_; }
    const std::string& provenance() const { return provenance_; }
    std::size_t size() const { return descriptors_.size(); }
    bool empty() const { return descriptors_.empty(); }

    const DefenseDescriptor* find(std::string_view id) const;
    /// Throws PreconditionError naming the first unknown id.
    std::vector<DefenseDescriptor> resolve(const std::vector<std::string>& ids) const;

    /// Sub-catalog holding only the listed ids, in catalog order.
    Catalog restricted_to(const std::vector<std::string>& ids) const;

    friend bool operator==(const Catalog&, const Catalog&) = default;

private:
    std::vector<DefenseDescriptor> descriptors_;
    std::string provenance_;
};

enum class ParseMode { strict, lenient };

struct CatalogParseResult {
    std::optional<Catalog> catalog;  // empty iff diagnostics contain an error
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return catalog.has_value(); }
};

CatalogParseResult parse_catalog(std::string_view text, ParseMode mode = ParseMode::strict);

/// Canonical DEFCAT text. parse_catalog(serialize_catalog(c)) == c.
std::string serialize_catalog(const Catalog& catalog);

/// Returns every invariant violation of a single descriptor; empty means ok.
std::vector<std::string> validate_descriptor(const DefenseDescriptor& d);

/// The eleven evaluated defenses plus the two pre-training entries used to
/// replay the PATE-style fairness/privacy combination.
const Catalog& builtin_catalog();
std::string_view builtin_catalog_text();

/// Ids of the eleven evaluated defenses, in catalog order.
const std::vector<std::string>& evaluated_defense_ids();

std::string_view to_string(Stage s);
std::string_view to_string(ChangeScope c);
std::string_view to_string(UtilityImpact u);
std::string_view to_string(MetricDirection d);
std::string_view to_string(RiskQualifier q);

std::optional<Stage> parse_stage(std::string_view token);
std::optional<ChangeScope> parse_change(std::string_view token);
std::optional<UtilityImpact> parse_utility(std::string_view token);

/// "backdoor:unintended", or the bare token when unqualified.
std::string to_string(const RiskTag& tag);

}  // namespace defcon
