#include "defcon/render.hpp"

#include <iomanip>
#include <sstream>

namespace defcon {

namespace {

Json risk_list(const std::vector<RiskTag>& tags) {
    Json out = Json::array();
    for (const RiskTag& t : tags) out.push_back(to_string(t));
    return out;
}

std::string joined(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (const std::string& s : items) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

}  // namespace

Json to_json(const DefenseDescriptor& d) {
    Json j;
    j["id"] = d.id;
    j["family"] = d.family;
    j["name"] = d.display_name;
    j["stage"] = to_string(d.stage);
    j["change"] = to_string(d.change);
    j["uses_risks"] = d.uses_risks;
    j["protects_risks"] = risk_list(d.protects_risks);
    j["utility"] = to_string(d.utility);
    j["objective"] = d.objective;
    if (d.metric) {
        j["metric"] = {{"name", d.metric->name}, {"direction", to_string(d.metric->direction)}};
    } else {
        j["metric"] = nullptr;
    }
    return j;
}

Json to_json(const PredictionTrace& t) {
    Json j;
    j["d1"] = t.d1_id;
    j["d2"] = t.d2_id;
    j["verdict"] = to_string(t.verdict);
    j["fired_step"] = to_string(t.fired_step);
    j["conflicting_risks"] = risk_list(t.conflicting_risks);
    j["rationale"] = t.rationale;
    return j;
}

Json to_json(const SetTrace& t) {
    Json j;
    j["verdict"] = to_string(t.verdict);
    j["defenses"] = t.ids;
    Json pairs = Json::array();
    for (const PredictionTrace& p : t.pair_traces) pairs.push_back(to_json(p));
    j["pairs"] = std::move(pairs);
    if (t.verdict == Verdict::conflict) {
        j["set_step"] = to_string(FiredStep::ext_pair_conflict);
        j["set_rationale"] = rationale(FiredStep::ext_pair_conflict);
    }
    return j;
}

Json to_json(const Plan& p) {
    Json j;
    j["ordering"] = p.ordering();
    j["advisory"] = {{"viability", to_string(p.advisory())}, {"binding", false}};
    j["trace"] = to_json(p.trace());
    return j;
}

Json to_json(const EvaluationReport& r) {
    Json j;
    j["technique"] = to_string(r.technique);
    j["cohort"] = r.cohort_name();
    j["matrix"] = {{"tp", r.matrix.tp}, {"tn", r.matrix.tn}, {"fp", r.matrix.fp}, {"fn", r.matrix.fn}};
    const BalancedAccuracy& ba = r.balanced_accuracy;
    j["balanced_accuracy"] = {{"numerator", ba.value.numerator()},
                              {"denominator", ba.value.denominator()},
                              {"decimal", ba.decimal()},
                              {"percent", ba.percent()},
                              {"degenerate", ba.degenerate}};
    Json rows = Json::array();
    for (const ReportRow& row : r.rows) {
        Json jr;
        jr["id"] = row.id;
        jr["prediction"] = to_string(row.prediction);
        jr["label"] = to_string(row.label);
        if (row.fired_step) {
            jr["fired_step"] = to_string(*row.fired_step);
        } else {
            jr["fired_step"] = nullptr;
        }
        jr["match"] = row.match;
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string to_text(const DefenseDescriptor& d) {
    std::ostringstream out;
    std::vector<std::string> protects;
    for (const RiskTag& t : d.protects_risks) protects.push_back(to_string(t));
    out << d.id << (d.display_name.empty() ? "" : "  " + d.display_name) << '\n'
        << "  stage:     " << to_string(d.stage) << '\n'
        << "  change:    " << to_string(d.change) << '\n'
        << "  uses:      " << (d.uses_risks.empty() ? "-" : joined(d.uses_risks, ", ")) << '\n'
        << "  protects:  " << (protects.empty() ? "-" : joined(protects, ", ")) << '\n'
        << "  utility:   " << to_string(d.utility) << '\n'
        << "  objective: " << d.objective << '\n';
    if (d.metric) out << "  metric:    " << d.metric->name << " (" << to_string(d.metric->direction) << ")\n";
    return out.str();
}

std::string to_text(const PredictionTrace& t) {
    std::ostringstream out;
    out << t.d1_id << " -> " << t.d2_id << ": " << to_string(t.verdict) << " ["
        << to_string(t.fired_step) << "]";
    if (!t.conflicting_risks.empty()) {
        std::vector<std::string> risks;
        for (const RiskTag& r : t.conflicting_risks) risks.push_back(to_string(r));
        out << " risks: " << joined(risks, ", ");
    }
    out << "\n    " << t.rationale << '\n';
    return out.str();
}

std::string to_text(const SetTrace& t) {
    std::ostringstream out;
    out << "verdict: " << to_string(t.verdict) << '\n';
    out << "order:   " << joined(t.ids, " -> ") << '\n';
    for (const PredictionTrace& p : t.pair_traces) out << "  " << to_text(p);
    if (t.verdict == Verdict::conflict && t.pair_traces.size() > 1) {
        out << "  " << to_string(FiredStep::ext_pair_conflict) << ": "
            << rationale(FiredStep::ext_pair_conflict) << '\n';
    }
    return out.str();
}

std::string to_text(const Plan& p) {
    std::ostringstream out;
    out << "plan: " << joined(p.ordering(), " -> ") << '\n';
    out << "viability (non-binding): " << to_string(p.advisory()) << '\n';
    for (const PredictionTrace& t : p.trace().pair_traces) out << "  " << to_text(t);
    return out.str();
}

std::string to_text(const EvaluationReport& r) {
    std::ostringstream out;
    const BalancedAccuracy& ba = r.balanced_accuracy;
    out << "technique: " << to_string(r.technique) << "  cohort: " << r.cohort_name() << '\n';
    out << "matrix: tp=" << r.matrix.tp << " tn=" << r.matrix.tn << " fp=" << r.matrix.fp
        << " fn=" << r.matrix.fn << '\n';
    out << "balanced accuracy: " << ba.value.numerator() << '/' << ba.value.denominator() << " = "
        << ba.decimal() << " (" << ba.percent() << ")";
    if (ba.degenerate) {
        out << " [degenerate: no " << (ba.true_positive_rate ? "ineffective" : "effective")
            << " records, single rate]";
    }
    out << '\n';
    out << std::left << std::setw(6) << "id" << std::setw(11) << "predicted" << std::setw(13) << "label"
        << std::setw(24) << "step" << "match\n";
    for (const ReportRow& row : r.rows) {
        out << std::setw(6) << row.id << std::setw(11) << to_string(row.prediction) << std::setw(13)
            << to_string(row.label) << std::setw(24)
            << (row.fired_step ? std::string(to_string(*row.fired_step)) : std::string("-"))
            << (row.match ? "yes" : "NO") << '\n';
    }
    return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace defcon
