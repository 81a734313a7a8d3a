#include "defcon/groundtruth.hpp"

#include "block_reader.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace defcon {

namespace {

using detail::Block;
using detail::Entry;

constexpr std::string_view kOutcomePrefix = "outcome.";

class RecordParser {
public:
    RecordParser(const Block& block, const Catalog& catalog, const std::vector<std::string>& metrics,
                 std::vector<Diagnostic>& diags)
        : block_(block), catalog_(catalog), metrics_(metrics), diags_(diags) {}

    std::optional<GroundTruthRecord> parse() {
        std::map<std::string, std::size_t, std::less<>> seen;
        std::size_t outcome_line = 0;
        for (const Entry& e : block_.entries) {
            if (const auto it = seen.find(e.key); it != seen.end()) {
                error(e.line, "duplicate key '" + e.key + "' (first given on line " +
                                  std::to_string(it->second) + ")");
                continue;
            }
            seen.emplace(e.key, e.line);
            if (e.key.starts_with(kOutcomePrefix)) {
                if (outcome_line == 0) outcome_line = e.line;
                parse_outcome(e);
            } else {
                parse_entry(e);
            }
        }
        for (const std::string_view key : {"id", "cohort", "defenses"}) {
            if (!seen.contains(key)) {
                error(block_.header_line, "missing required key '" + std::string(key) + "'");
            }
        }
        if (failed_) return std::nullopt;

        const std::size_t cohort_line = seen.at("cohort");
        if (cohort_uses_direct_label(r_.cohort)) {
            if (!r_.direct_label) {
                error(cohort_line, "cohort '" + std::string(to_string(r_.cohort)) + "' requires a label");
            }
            if (!r_.outcomes.empty()) {
                error(outcome_line, "cohort '" + std::string(to_string(r_.cohort)) +
                                        "' takes a label, not outcome lines");
            }
        } else {
            if (r_.direct_label) {
                error(seen.at("label"), "cohort '" + std::string(to_string(r_.cohort)) +
                                            "' takes outcome lines, not a label");
            }
            if (r_.outcomes.empty()) {
                error(cohort_line, "cohort '" + std::string(to_string(r_.cohort)) +
                                       "' requires at least one outcome line");
            }
        }
        if (failed_) return std::nullopt;
        return r_;
    }

private:
    void parse_entry(const Entry& e) {
        const std::string& v = e.value;
        if (e.key == "id") {
            if (detail::is_identifier(v, false)) {
                r_.id = v;
            } else {
                error(e.line, "malformed record id '" + v + "'");
            }
        } else if (e.key == "cohort") {
            if (auto c = parse_cohort(v)) {
                r_.cohort = *c;
            } else {
                error(e.line, "unknown cohort '" + v + "' (expected prior, empirical, scaling or argued)");
            }
        } else if (e.key == "defenses") {
            parse_defenses(e);
        } else if (e.key == "source") {
            if (auto s = detail::unquote(v)) {
                r_.source = std::move(*s);
            } else {
                error(e.line, "source must be a double-quoted string");
            }
        } else if (e.key == "label") {
            if (auto l = parse_label(v)) {
                r_.direct_label = *l;
            } else {
                error(e.line, "unknown label '" + v + "' (expected effective or ineffective)");
            }
        } else {
            error(e.line, "unknown key '" + e.key + "'");
        }
    }

    void parse_defenses(const Entry& e) {
        const auto ids = detail::split_list(e.value);
        if (!ids) {
            error(e.line, "malformed list for 'defenses' (empty element)");
            return;
        }
        if (ids->size() < 2) {
            error(e.line, "a combination needs at least 2 defenses");
            return;
        }
        const DefenseDescriptor* previous = nullptr;
        std::set<std::string_view> seen;
        for (const std::string& id : *ids) {
            const DefenseDescriptor* d = catalog_.find(id);
            if (d == nullptr) {
                error(e.line, "unknown defense id '" + id + "'");
                return;
            }
            if (!seen.insert(id).second) {
                error(e.line, "defense '" + id + "' listed more than once");
                return;
            }
            if (previous != nullptr && d->stage < previous->stage) {
                error(e.line, "stage order violation: '" + previous->id + "' (" +
                                  std::string(to_string(previous->stage)) + ") listed before '" + id +
                                  "' (" + std::string(to_string(d->stage)) + ")");
                return;
            }
            previous = d;
        }
        r_.defenses = *ids;
    }

    void parse_outcome(const Entry& e) {
        const std::string_view rest = std::string_view(e.key).substr(kOutcomePrefix.size());
        const std::size_t dot = rest.find('.');
        if (dot == std::string_view::npos || dot == 0 || dot + 1 == rest.size() ||
            rest.find('.', dot + 1) != std::string_view::npos) {
            error(e.line, "malformed outcome key '" + e.key + "' (expected outcome.<dataset>.<metric>)");
            return;
        }
        MetricOutcome o;
        o.dataset = std::string(rest.substr(0, dot));
        o.metric = std::string(rest.substr(dot + 1));
        if (std::find(kDatasets.begin(), kDatasets.end(), o.dataset) == kDatasets.end()) {
            error(e.line, "unknown dataset '" + o.dataset + "'");
            return;
        }
        if (std::find(metrics_.begin(), metrics_.end(), o.metric) == metrics_.end()) {
            error(e.line, "unknown metric '" + o.metric + "'");
            return;
        }
        const auto color = parse_color(e.value);
        if (!color) {
            error(e.line, "unknown color '" + e.value + "' (expected green, orange or red)");
            return;
        }
        o.color = *color;
        r_.outcomes.push_back(std::move(o));
    }

    void error(std::size_t line, std::string message) {
        diags_.push_back({line, Severity::error, std::move(message)});
        failed_ = true;
    }

    const Block& block_;
    const Catalog& catalog_;
    const std::vector<std::string>& metrics_;
    std::vector<Diagnostic>& diags_;
    GroundTruthRecord r_;
    bool failed_ = false;
};

}  // namespace

bool cohort_uses_direct_label(Cohort c) { return c == Cohort::prior || c == Cohort::argued; }

Label derive_label(const GroundTruthRecord& record) {
    if (record.direct_label) return *record.direct_label;
    if (record.outcomes.empty()) {
        throw PreconditionError("record '" + record.id + "' has neither outcomes nor a label");
    }
    const bool degraded = std::any_of(record.outcomes.begin(), record.outcomes.end(),
                                      [](const MetricOutcome& o) { return o.color != OutcomeColor::green; });
    return degraded ? Label::ineffective : Label::effective;
}

std::vector<std::string> metric_vocabulary(const Catalog& catalog) {
    std::vector<std::string> out;
    for (const DefenseDescriptor& d : catalog.descriptors()) {
        if (d.metric && std::find(out.begin(), out.end(), d.metric->name) == out.end()) {
            out.push_back(d.metric->name);
        }
    }
    return out;
}

GroundTruthParseResult parse_groundtruth(std::string_view text, const Catalog& catalog) {
    GroundTruthParseResult result;
    const detail::BlockDocument doc = detail::read_blocks(text, "combination", result.diagnostics);
    const std::vector<std::string> metrics = metric_vocabulary(catalog);

    std::vector<GroundTruthRecord> records;
    std::map<std::string, std::size_t, std::less<>> id_lines;
    for (const Block& block : doc.blocks) {
        auto record = RecordParser(block, catalog, metrics, result.diagnostics).parse();
        if (!record) continue;
        const auto id_entry = std::find_if(block.entries.begin(), block.entries.end(),
                                           [](const Entry& e) { return e.key == "id"; });
        if (const auto it = id_lines.find(record->id); it != id_lines.end()) {
            result.diagnostics.push_back({id_entry->line, Severity::error,
                                          "duplicate record id '" + record->id +
                                              "' (first defined on line " + std::to_string(it->second) + ")"});
            continue;
        }
        id_lines.emplace(record->id, id_entry->line);
        records.push_back(std::move(*record));
    }
    if (!has_errors(result.diagnostics)) result.records = std::move(records);
    return result;
}

std::string serialize_groundtruth(const std::vector<GroundTruthRecord>& records) {
    std::ostringstream out;
    out << "# defense-combination ground truth\n";
    for (const GroundTruthRecord& r : records) {
        out << "\n[combination]\n";
        out << "id = " << r.id << '\n';
        out << "cohort = " << to_string(r.cohort) << '\n';
        out << "defenses = ";
        for (std::size_t i = 0; i < r.defenses.size(); ++i) out << (i == 0 ? "" : ", ") << r.defenses[i];
        out << '\n';
        if (!r.source.empty()) out << "source = " << detail::quote(r.source) << '\n';
        if (r.direct_label) out << "label = " << to_string(*r.direct_label) << '\n';
        for (const MetricOutcome& o : r.outcomes) {
            out << "outcome." << o.dataset << '.' << o.metric << " = " << to_string(o.color) << '\n';
        }
    }
    return out.str();
}

std::string_view to_string(Cohort c) {
    switch (c) {
        case Cohort::prior: return "prior";
        case Cohort::empirical: return "empirical";
        case Cohort::scaling: return "scaling";
        case Cohort::argued: return "argued";
    }
    return "?";
}

std::string_view to_string(OutcomeColor c) {
    switch (c) {
        case OutcomeColor::green: return "green";
        case OutcomeColor::orange: return "orange";
        case OutcomeColor::red: return "red";
    }
    return "?";
}

std::string_view to_string(Label l) { return l == Label::effective ? "effective" : "ineffective"; }

std::optional<Cohort> parse_cohort(std::string_view token) {
    for (const Cohort c : {Cohort::prior, Cohort::empirical, Cohort::scaling, Cohort::argued}) {
        if (to_string(c) == token) return c;
    }
    return std::nullopt;
}

std::optional<OutcomeColor> parse_color(std::string_view token) {
    for (const OutcomeColor c : {OutcomeColor::green, OutcomeColor::orange, OutcomeColor::red}) {
        if (to_string(c) == token) return c;
    }
    return std::nullopt;
}

std::optional<Label> parse_label(std::string_view token) {
    if (token == "effective") return Label::effective;
    if (token == "ineffective") return Label::ineffective;
    return std::nullopt;
}

}  // namespace defcon
