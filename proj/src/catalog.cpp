#include "defcon/catalog.hpp"

#include "block_reader.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace defcon {

namespace {

using detail::Block;
using detail::Entry;

constexpr std::array<std::string_view, 6> kRequiredKeys = {"id",      "family",  "stage",
                                                            "change",  "utility", "objective"};
constexpr std::array<std::string_view, 10> kCanonicalKeys = {
    "id",           "family",         "name",    "stage",     "change",
    "uses_risks",   "protects_risks", "utility", "objective", "metric"};

std::vector<std::string_view> split_id(std::string_view id) {
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = id.find('.', pos);
        parts.push_back(id.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos));
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
    }
    return parts;
}

std::string normalize_provenance(std::string_view text) {
    std::string out(detail::trim(text));
    std::replace(out.begin(), out.end(), '\n', ' ');
    std::replace(out.begin(), out.end(), '\r', ' ');
    return std::string(detail::trim(out));
}

std::optional<RiskQualifier> parse_qualifier(std::string_view token) {
    if (token == "explicit") return RiskQualifier::explicit_;
    if (token == "unintended") return RiskQualifier::unintended;
    return std::nullopt;
}

std::optional<MetricDirection> parse_direction(std::string_view token) {
    if (token == "up") return MetricDirection::up;
    if (token == "down") return MetricDirection::down;
    return std::nullopt;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i != 0) out += sep;
        out += items[i];
    }
    return out;
}

// Parses one [defense] block into a descriptor. Problems are appended to
// `diags`; the returned descriptor is only meaningful when none of them is an
// error.
class BlockParser {
public:
    BlockParser(const Block& block, ParseMode mode, std::vector<Diagnostic>& diags)
        : block_(block), mode_(mode), diags_(diags) {}

    std::optional<DefenseDescriptor> parse() {
        const std::size_t errors_before = error_count();
        std::map<std::string, std::size_t, std::less<>> seen;
        for (const Entry& e : block_.entries) {
            if (const auto it = seen.find(e.key); it != seen.end()) {
                error(e.line, "duplicate key '" + e.key + "' (first given on line " +
                                  std::to_string(it->second) + ")");
                continue;
            }
            seen.emplace(e.key, e.line);
            parse_entry(e);
        }
        for (const std::string_view key : kRequiredKeys) {
            if (!seen.contains(key)) {
                error(block_.header_line, "missing required key '" + std::string(key) + "'");
            }
        }
        if (error_count() != errors_before) return std::nullopt;

        const std::size_t anchor = seen.at("id");
        for (const std::string& violation : validate_descriptor(d_)) {
            const std::size_t line = violation.starts_with("stage/id") ? seen.at("stage") : anchor;
            error(line, violation);
        }
        if (error_count() != errors_before) return std::nullopt;
        return d_;
    }

private:
    void parse_entry(const Entry& e) {
        const std::string& v = e.value;
        if (e.key == "id") {
            d_.id = v;
        } else if (e.key == "family") {
            d_.family = v;
        } else if (e.key == "name") {
            if (auto s = detail::unquote(v)) {
                d_.display_name = std::move(*s);
            } else {
                error(e.line, "name must be a double-quoted string");
            }
        } else if (e.key == "stage") {
            if (auto s = parse_stage(v)) {
                d_.stage = *s;
            } else {
                error(e.line, "unknown stage '" + v + "' (expected pre, in or post)");
            }
        } else if (e.key == "change") {
            if (auto c = parse_change(v)) {
                d_.change = *c;
            } else {
                error(e.line, "unknown change '" + v + "' (expected global, local or none)");
            }
        } else if (e.key == "utility") {
            if (auto u = parse_utility(v)) {
                d_.utility = *u;
            } else {
                error(e.line, "unknown utility '" + v + "' (expected down, same or up)");
            }
        } else if (e.key == "objective") {
            d_.objective = v;
        } else if (e.key == "uses_risks") {
            parse_uses(e);
        } else if (e.key == "protects_risks") {
            parse_protects(e);
        } else if (e.key == "metric") {
            parse_metric(e);
        } else {
            vocabulary_problem(e.line, "unknown key '" + e.key + "'");
        }
    }

    void parse_uses(const Entry& e) {
        const auto tokens = list_or_error(e);
        if (!tokens) return;
        for (const std::string& t : *tokens) {
            if (t.find(':') != std::string::npos) {
                error(e.line, "uses_risks takes unqualified risk tokens, got '" + t + "'");
            } else if (!is_known_risk(t)) {
                vocabulary_problem(e.line, "unknown risk token '" + t + "'");
            } else if (std::find(d_.uses_risks.begin(), d_.uses_risks.end(), t) != d_.uses_risks.end()) {
                error(e.line, "duplicate risk token '" + t + "'");
            } else {
                d_.uses_risks.push_back(t);
            }
        }
    }

    void parse_protects(const Entry& e) {
        const auto tokens = list_or_error(e);
        if (!tokens) return;
        for (const std::string& t : *tokens) {
            RiskTag tag;
            const std::size_t colon = t.find(':');
            tag.token = t.substr(0, colon);
            if (colon != std::string::npos) {
                const auto q = parse_qualifier(t.substr(colon + 1));
                if (!q) {
                    error(e.line, "unknown risk qualifier '" + t.substr(colon + 1) +
                                      "' (expected explicit or unintended)");
                    continue;
                }
                tag.qualifier = *q;
            }
            if (!is_known_risk(tag.token)) {
                vocabulary_problem(e.line, "unknown risk token '" + tag.token + "'");
            } else if (d_.protects(tag.token)) {
                error(e.line, "duplicate risk token '" + tag.token + "'");
            } else {
                d_.protects_risks.push_back(std::move(tag));
            }
        }
    }

    void parse_metric(const Entry& e) {
        const auto tokens = detail::split_list(e.value);
        if (!tokens || tokens->size() != 2) {
            error(e.line, "metric must be 'name,up' or 'name,down'");
            return;
        }
        const auto dir = parse_direction((*tokens)[1]);
        if (!dir) {
            error(e.line, "unknown metric direction '" + (*tokens)[1] + "' (expected up or down)");
            return;
        }
        d_.metric = MetricSpec{(*tokens)[0], *dir};
    }

    std::optional<std::vector<std::string>> list_or_error(const Entry& e) {
        auto tokens = detail::split_list(e.value);
        if (!tokens) error(e.line, "malformed list for '" + e.key + "' (empty element)");
        return tokens;
    }

    // Unknown keys and risk tokens: errors in strict mode, dropped with a
    // warning in lenient mode.
    void vocabulary_problem(std::size_t line, std::string message) {
        if (mode_ == ParseMode::strict) {
            error(line, std::move(message));
        } else {
            diags_.push_back({line, Severity::warning, std::move(message) + " (ignored)"});
        }
    }

    void error(std::size_t line, std::string message) {
        diags_.push_back({line, Severity::error, std::move(message)});
    }

    std::size_t error_count() const {
        return static_cast<std::size_t>(std::count_if(
            diags_.begin(), diags_.end(), [](const Diagnostic& d) { return d.severity == Severity::error; }));
    }

    const Block& block_;
    ParseMode mode_;
    std::vector<Diagnostic>& diags_;
    DefenseDescriptor d_;
};

}  // namespace

bool is_known_risk(std::string_view token) {
    return std::find(kRiskVocabulary.begin(), kRiskVocabulary.end(), token) != kRiskVocabulary.end();
}

bool DefenseDescriptor::protects(std::string_view risk_token) const {
    return std::any_of(protects_risks.begin(), protects_risks.end(),
                       [&](const RiskTag& t) { return t.token == risk_token; });
}

Catalog::Catalog(std::vector<DefenseDescriptor> descriptors, std::string provenance)
    : descriptors_(std::move(descriptors)), provenance_(normalize_provenance(provenance)) {
    std::set<std::string_view> ids;
    for (const DefenseDescriptor& d : descriptors_) {
        if (!ids.insert(d.id).second) throw PreconditionError("duplicate id '" + d.id + "' in catalog");
    }
}

const DefenseDescriptor* Catalog::find(std::string_view id) const {
    const auto it = std::find_if(descriptors_.begin(), descriptors_.end(),
                                 [&](const DefenseDescriptor& d) { return d.id == id; });
    return it == descriptors_.end() ? nullptr : &*it;
}

std::vector<DefenseDescriptor> Catalog::resolve(const std::vector<std::string>& ids) const {
    std::vector<DefenseDescriptor> out;
    out.reserve(ids.size());
    for (const std::string& id : ids) {
        const DefenseDescriptor* d = find(id);
        if (d == nullptr) throw PreconditionError("unknown defense id '" + id + "'");
        out.push_back(*d);
    }
    return out;
}

Catalog Catalog::restricted_to(const std::vector<std::string>& ids) const {
    std::vector<DefenseDescriptor> kept;
    for (const DefenseDescriptor& d : descriptors_) {
        if (std::find(ids.begin(), ids.end(), d.id) != ids.end()) kept.push_back(d);
    }
    return Catalog(std::move(kept), provenance_);
}

CatalogParseResult parse_catalog(std::string_view text, ParseMode mode) {
    CatalogParseResult result;
    const detail::BlockDocument doc = detail::read_blocks(text, "defense", result.diagnostics);

    std::vector<DefenseDescriptor> descriptors;
    std::map<std::string, std::size_t, std::less<>> id_lines;
    for (const Block& block : doc.blocks) {
        auto d = BlockParser(block, mode, result.diagnostics).parse();
        if (!d) continue;
        const auto id_entry = std::find_if(block.entries.begin(), block.entries.end(),
                                           [](const Entry& e) { return e.key == "id"; });
        if (const auto it = id_lines.find(d->id); it != id_lines.end()) {
            result.diagnostics.push_back({id_entry->line, Severity::error,
                                          "duplicate id '" + d->id + "' (first defined on line " +
                                              std::to_string(it->second) + ")"});
            continue;
        }
        id_lines.emplace(d->id, id_entry->line);
        descriptors.push_back(std::move(*d));
    }

    if (!has_errors(result.diagnostics)) {
        result.catalog = Catalog(std::move(descriptors), doc.provenance.value_or(""));
    }
    return result;
}

std::string serialize_catalog(const Catalog& catalog) {
    std::ostringstream out;
    out << "# provenance: " << catalog.provenance() << '\n';
    for (const DefenseDescriptor& d : catalog.descriptors()) {
        out << "\n[defense]\n";
        for (const std::string_view key : kCanonicalKeys) {
            if (key == "id") {
                out << "id = " << d.id << '\n';
            } else if (key == "family") {
                out << "family = " << d.family << '\n';
            } else if (key == "name" && !d.display_name.empty()) {
                out << "name = " << detail::quote(d.display_name) << '\n';
            } else if (key == "stage") {
                out << "stage = " << to_string(d.stage) << '\n';
            } else if (key == "change") {
                out << "change = " << to_string(d.change) << '\n';
            } else if (key == "uses_risks" && !d.uses_risks.empty()) {
                out << "uses_risks = " << join(d.uses_risks, ", ") << '\n';
            } else if (key == "protects_risks" && !d.protects_risks.empty()) {
                std::vector<std::string> tags;
                for (const RiskTag& t : d.protects_risks) tags.push_back(to_string(t));
                out << "protects_risks = " << join(tags, ", ") << '\n';
            } else if (key == "utility") {
                out << "utility = " << to_string(d.utility) << '\n';
            } else if (key == "objective") {
                out << "objective = " << d.objective << '\n';
            } else if (key == "metric" && d.metric) {
                out << "metric = " << d.metric->name << ',' << to_string(d.metric->direction) << '\n';
            }
        }
    }
    return out.str();
}

std::vector<std::string> validate_descriptor(const DefenseDescriptor& d) {
    std::vector<std::string> violations;
    const auto parts = split_id(d.id);
    if (!detail::is_identifier(d.id, true) || parts.size() < 2 || parts.size() > 3) {
        violations.push_back("malformed id '" + d.id + "' (expected family.stage[.context])");
    } else {
        if (parts[0] != d.family) {
            violations.push_back("family/id mismatch: id '" + d.id + "' but family '" + d.family + "'");
        }
        if (parts[1] != to_string(d.stage)) {
            violations.push_back("stage/id mismatch: id '" + d.id + "' but stage '" +
                                 std::string(to_string(d.stage)) + "'");
        }
    }
    if (!detail::is_identifier(d.family, false)) {
        violations.push_back("malformed family '" + d.family + "'");
    }
    if (!detail::is_identifier(d.objective, false)) {
        violations.push_back("malformed objective '" + d.objective + "'");
    }
    if (d.display_name.find_first_of("\r\n") != std::string::npos) {
        violations.push_back("display name must be a single line");
    }

    std::set<std::string_view> seen;
    for (const std::string& r : d.uses_risks) {
        if (!is_known_risk(r)) violations.push_back("unknown risk token '" + r + "' in uses_risks");
        if (!seen.insert(r).second) violations.push_back("duplicate risk token '" + r + "' in uses_risks");
    }
    seen.clear();
    for (const RiskTag& t : d.protects_risks) {
        if (!is_known_risk(t.token)) {
            violations.push_back("unknown risk token '" + t.token + "' in protects_risks");
        }
        if (!seen.insert(t.token).second) {
            violations.push_back("duplicate risk token '" + t.token + "' in protects_risks");
        }
    }
    if (d.metric && !detail::is_identifier(d.metric->name, false)) {
        violations.push_back("malformed metric name '" + d.metric->name + "'");
    }
    return violations;
}

std::string_view to_string(Stage s) {
    switch (s) {
        case Stage::pre: return "pre";
        case Stage::in: return "in";
        case Stage::post: return "post";
    }
    return "?";
}

std::string_view to_string(ChangeScope c) {
    switch (c) {
        case ChangeScope::global: return "global";
        case ChangeScope::local: return "local";
        case ChangeScope::none: return "none";
    }
    return "?";
}

std::string_view to_string(UtilityImpact u) {
    switch (u) {
        case UtilityImpact::down: return "down";
        case UtilityImpact::same: return "same";
        case UtilityImpact::up: return "up";
    }
    return "?";
}

std::string_view to_string(MetricDirection d) { return d == MetricDirection::up ? "up" : "down"; }

std::string_view to_string(RiskQualifier q) {
    switch (q) {
        case RiskQualifier::unspecified: return "";
        case RiskQualifier::explicit_: return "explicit";
        case RiskQualifier::unintended: return "unintended";
    }
    return "?";
}

std::string to_string(const RiskTag& tag) {
    if (tag.qualifier == RiskQualifier::unspecified) return tag.token;
    return tag.token + ":" + std::string(to_string(tag.qualifier));
}

std::optional<Stage> parse_stage(std::string_view token) {
    if (token == "pre") return Stage::pre;
    if (token == "in") return Stage::in;
    if (token == "post") return Stage::post;
    return std::nullopt;
}

std::optional<ChangeScope> parse_change(std::string_view token) {
    if (token == "global") return ChangeScope::global;
    if (token == "local") return ChangeScope::local;
    if (token == "none") return ChangeScope::none;
    return std::nullopt;
}

std::optional<UtilityImpact> parse_utility(std::string_view token) {
    if (token == "down") return UtilityImpact::down;
    if (token == "same") return UtilityImpact::same;
    if (token == "up") return UtilityImpact::up;
    return std::nullopt;
}

}  // namespace defcon
