#include "defcon/eval.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <tuple>

namespace defcon {

std::string_view to_string(Technique t) { return t == Technique::defcon ? "defcon" : "naive"; }

std::optional<Technique> parse_technique(std::string_view token) {
    if (token == "defcon") return Technique::defcon;
    if (token == "naive") return Technique::naive;
    return std::nullopt;
}

ConfusionMatrix confusion(std::span<const std::pair<Verdict, Label>> scored) {
    if (scored.empty()) throw PreconditionError("confusion matrix needs at least one scored record");
    ConfusionMatrix m;
    for (const auto& [prediction, label] : scored) {
        const bool predicted_effective = prediction == Verdict::aligned;
        const bool effective = label == Label::effective;
        if (predicted_effective && effective) ++m.tp;
        if (!predicted_effective && !effective) ++m.tn;
        if (predicted_effective && !effective) ++m.fp;
        if (!predicted_effective && effective) ++m.fn;
    }
    return m;
}

BalancedAccuracy balanced_accuracy(const ConfusionMatrix& m) {
    if (m.tp < 0 || m.tn < 0 || m.fp < 0 || m.fn < 0) {
        throw PreconditionError("confusion matrix counts must be non-negative");
    }
    if (m.total() == 0) throw PreconditionError("balanced accuracy of an all-zero confusion matrix");

    BalancedAccuracy ba;
    if (m.tp + m.fn > 0) ba.true_positive_rate = Rational(m.tp, m.tp + m.fn);
    if (m.tn + m.fp > 0) ba.true_negative_rate = Rational(m.tn, m.tn + m.fp);
    if (ba.true_positive_rate && ba.true_negative_rate) {
        ba.value = (*ba.true_positive_rate + *ba.true_negative_rate) / 2;
    } else {
        ba.degenerate = true;
        ba.value = ba.true_positive_rate ? *ba.true_positive_rate : *ba.true_negative_rate;
    }
    return ba;
}

std::string format_decimal(const Rational& r, int places) {
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    // floor(r * scale + 1/2), i.e. round half-up
    const std::int64_t scaled = (2 * r.numerator() * scale + r.denominator()) / (2 * r.denominator());
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    std::string out = std::to_string(scaled / scale);
    if (places > 0) out += "." + frac;
    return out;
}

std::string BalancedAccuracy::decimal() const { return format_decimal(value, 4); }

std::string BalancedAccuracy::percent() const { return format_decimal(value * 100, 2) + "%"; }

bool record_id_less(std::string_view a, std::string_view b) {
    const auto split = [](std::string_view s) {
        std::size_t i = 0;
        while (i < s.size() && !std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        const std::string_view prefix = s.substr(0, i);
        const std::string_view digits = s.substr(i);
        const bool numeric = !digits.empty() && digits.size() <= 18 && std::all_of(digits.begin(), digits.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c)) != 0;
        });
        return std::tuple{prefix, numeric, numeric ? std::stoll(std::string(digits)) : 0LL, s};
    };
    return split(a) < split(b);
}

std::string EvaluationReport::cohort_name() const {
    if (cohorts.size() == 4) return "all";
    std::string out;
    for (const Cohort c : cohorts) {
        if (!out.empty()) out += "+";
        out += to_string(c);
    }
    return out;
}

EvaluationReport evaluate_technique(Technique technique, std::span<const Cohort> cohorts,
                                    const Catalog& catalog,
                                    std::span<const GroundTruthRecord> records) {
    EvaluationReport report;
    report.technique = technique;
    for (const Cohort c : {Cohort::prior, Cohort::empirical, Cohort::scaling, Cohort::argued}) {
        if (std::find(cohorts.begin(), cohorts.end(), c) != cohorts.end()) report.cohorts.push_back(c);
    }

    std::vector<const GroundTruthRecord*> selected;
    for (const GroundTruthRecord& r : records) {
        if (std::find(report.cohorts.begin(), report.cohorts.end(), r.cohort) != report.cohorts.end()) {
            selected.push_back(&r);
        }
    }
    if (selected.empty()) throw PreconditionError("no ground-truth records in the selected cohorts");
    std::stable_sort(selected.begin(), selected.end(),
                     [](const GroundTruthRecord* a, const GroundTruthRecord* b) {
                         return record_id_less(a->id, b->id);
                     });

    std::vector<std::pair<Verdict, Label>> scored;
    for (const GroundTruthRecord* r : selected) {
        const std::vector<DefenseDescriptor> defenses = catalog.resolve(r->defenses);
        ReportRow row;
        row.id = r->id;
        row.label = derive_label(*r);
        if (technique == Technique::defcon) {
            const SetTrace trace = predict_set(defenses);
            row.prediction = trace.verdict;
            if (trace.pair_traces.size() == 1) {
                row.fired_step = trace.pair_traces.front().fired_step;
            } else if (trace.verdict == Verdict::conflict) {
                row.fired_step = FiredStep::ext_pair_conflict;
            }
        } else {
            row.prediction = predict_naive(defenses);
        }
        row.match = (row.prediction == Verdict::aligned) == (row.label == Label::effective);
        scored.emplace_back(row.prediction, row.label);
        report.rows.push_back(std::move(row));
    }
    report.matrix = confusion(scored);
    report.balanced_accuracy = balanced_accuracy(report.matrix);
    return report;
}

}  // namespace defcon
