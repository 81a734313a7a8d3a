// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every tolerance is exact; rationals are compared as
// rationals.

#include "defcon/catalog.hpp"
#include "defcon/cli.hpp"
#include "defcon/engine.hpp"
#include "defcon/eval.hpp"
#include "defcon/groundtruth.hpp"
#include "defcon/planner.hpp"

#include "../planner_oracle.hpp"
#include "../support.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace defcon;
using defcon::testing::Gen;
using defcon::testing::kPropertyCases;

namespace {

// Zero tolerance: balanced accuracies must equal these rationals exactly.
const Rational kPriorDefcon(9, 10);
const Rational kPriorNaive(2, 5);
const Rational kEmpiricalDefcon(13, 16);
const Rational kEmpiricalNaive(4, 11);

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

EvaluationReport evaluate(Technique t, Cohort c) {
    const Cohort cohorts[] = {c};
    return evaluate_technique(t, cohorts, builtin_catalog(), builtin_groundtruth());
}

std::string describe(const ConfusionMatrix& m) {
    return "(" + std::to_string(m.tp) + "," + std::to_string(m.tn) + "," + std::to_string(m.fp) + "," +
           std::to_string(m.fn) + ")";
}

std::string describe(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void golden_cohort(Check& c, Cohort cohort, const ConfusionMatrix& defcon_m, const Rational& defcon_ba,
                   const ConfusionMatrix& naive_m, const Rational& naive_ba) {
    const EvaluationReport d = evaluate(Technique::defcon, cohort);
    const EvaluationReport n = evaluate(Technique::naive, cohort);
    c.require(d.matrix == defcon_m, "defcon matrix " + describe(d.matrix));
    c.require(d.balanced_accuracy.value == defcon_ba, "defcon BA " + describe(d.balanced_accuracy.value));
    c.require(n.matrix == naive_m, "naive matrix " + describe(n.matrix));
    c.require(n.balanced_accuracy.value == naive_ba, "naive BA " + describe(n.balanced_accuracy.value));
    c.detail = c.ok ? "defcon " + describe(d.matrix) + " BA " + describe(d.balanced_accuracy.value) + " (" +
                          d.balanced_accuracy.percent() + "), naive " + describe(n.matrix) + " BA " +
                          describe(n.balanced_accuracy.value)
                    : c.detail;
}

Check prior_golden() {
    Check c;
    golden_cohort(c, Cohort::prior, {4, 3, 0, 1}, kPriorDefcon, {4, 0, 3, 1}, kPriorNaive);
    return c;
}

Check empirical_golden() {
    Check c;
    golden_cohort(c, Cohort::empirical, {22, 5, 3, 0}, kEmpiricalDefcon, {16, 0, 8, 6}, kEmpiricalNaive);
    return c;
}

Check per_combination_golden() {
    Check c;
    const std::set<std::string> defcon_conflicts = {"C4", "C5", "C6", "C7", "C21", "C23", "C36", "C37", "C38"};
    const std::set<std::string> naive_conflicts = {"C1", "C11", "C20", "C28", "C29", "C33", "C34"};
    int rows = 0;
    int mismatches = 0;
    for (const GroundTruthRecord& r : builtin_groundtruth()) {
        if (r.cohort != Cohort::prior && r.cohort != Cohort::empirical) continue;
        ++rows;
        const auto ds = builtin_catalog().resolve(r.defenses);
        const bool defcon_conflict = predict_pair(ds[0], ds[1]).verdict == Verdict::conflict;
        const bool naive_conflict = predict_naive(ds) == Verdict::conflict;
        if (defcon_conflict != defcon_conflicts.contains(r.id)) ++mismatches;
        if (naive_conflict != naive_conflicts.contains(r.id)) ++mismatches;
    }
    c.require(rows == 38, "expected 38 pairwise records, found " + std::to_string(rows));
    c.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    if (c.ok) c.detail = "38 records, 0 mismatches for either technique";
    return c;
}

Check scaling_golden() {
    Check c;
    int triples = 0;
    int argued = 0;
    for (const GroundTruthRecord& r : builtin_groundtruth()) {
        const auto ds = builtin_catalog().resolve(r.defenses);
        if (r.cohort == Cohort::scaling) {
            ++triples;
            c.require(ds.size() == 3, r.id + " is not a triple");
            c.require(predict_set(ds).verdict == Verdict::aligned, r.id + " predicted conflict");
            c.require(derive_label(r) == Label::effective, r.id + " not labelled effective");
        } else if (r.cohort == Cohort::argued) {
            ++argued;
            const PredictionTrace t = predict_pair(ds[0], ds[1]);
            c.require(t.verdict == Verdict::conflict && t.fired_step == FiredStep::s1_s2_global_override,
                      r.id + " fired " + std::string(to_string(t.fired_step)));
        }
    }
    c.require(triples == 6, "expected 6 triples, found " + std::to_string(triples));
    c.require(argued == 10, "expected 10 argued pairs, found " + std::to_string(argued));
    if (c.ok) c.detail = "6/6 triples aligned, 10/10 argued pairs S1_S2_global_override";
    return c;
}

Check enumeration_golden() {
    Check c;
    const Catalog eleven = builtin_catalog().restricted_to(evaluated_defense_ids());
    const auto pairs = enumerate_pairs(eleven);
    const std::size_t n = eleven.size();
    std::size_t same_objective = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (eleven.descriptors()[i].objective == eleven.descriptors()[j].objective) ++same_objective;
        }
    }
    std::set<std::pair<std::string, std::string>> distinct;
    for (const auto& [a, b] : pairs) {
        c.require(a.objective != b.objective, a.id + "/" + b.id + " share an objective");
        distinct.insert({std::min(a.id, b.id), std::max(a.id, b.id)});
    }
    c.require(n == 11, "expected 11 descriptors");
    c.require(same_objective == 7, "expected 7 same-objective pairs, found " + std::to_string(same_objective));
    c.require(pairs.size() == 48 && distinct.size() == 48, "found " + std::to_string(pairs.size()) + " pairs");
    if (c.ok) c.detail = "55 - 7 = 48 pairs";
    return c;
}

// Compact restatements of the randomized laws; the unit suite holds the
// fuller versions with shrink-friendly failure messages.
Check property_suites() {
    Check c;
    int suites = 0;
    auto suite = [&](const std::string& name, std::uint32_t seed, const std::function<bool(Gen&)>& law) {
        Gen gen(seed);
        for (int i = 0; i < kPropertyCases; ++i) {
            if (!law(gen)) {
                c.require(false, name + " failed at case " + std::to_string(i));
                return;
            }
        }
        ++suites;
    };
    auto same_stage = [](Gen& g) {
        DefenseDescriptor a = g.descriptor(0);
        DefenseDescriptor b = g.descriptor(1);
        b.stage = a.stage;
        b.id = b.family + "." + std::string(to_string(b.stage));
        return std::pair{a, b};
    };

    suite("S-2 local/none", 1, [&](Gen& g) {
        auto [a, b] = same_stage(g);
        b.change = g.coin() ? ChangeScope::local : ChangeScope::none;
        return predict_pair(a, b).verdict == Verdict::aligned;
    });
    suite("S-2 global", 2, [&](Gen& g) {
        auto [a, b] = same_stage(g);
        b.change = ChangeScope::global;
        return predict_pair(a, b).verdict == Verdict::conflict;
    });
    suite("cross-stage", 3, [](Gen& g) {
        DefenseDescriptor a = g.descriptor(0);
        DefenseDescriptor b = g.descriptor(1);
        if (a.stage == b.stage) return true;
        if (b.stage < a.stage) std::swap(a, b);
        bool intersect = false;
        for (const RiskTag& t : b.protects_risks) {
            intersect = intersect || std::find(a.uses_risks.begin(), a.uses_risks.end(), t.token) != a.uses_risks.end();
        }
        return (predict_pair(a, b).verdict == Verdict::conflict) == intersect;
    });
    suite("naive", 4, [](Gen& g) {
        auto ds = g.pipeline(2, 6);
        std::shuffle(ds.begin(), ds.end(), g.engine());
        std::set<Stage> stages;
        for (const auto& d : ds) stages.insert(d.stage);
        const Verdict v = predict_naive(ds);
        std::shuffle(ds.begin(), ds.end(), g.engine());
        return (v == Verdict::conflict) == (stages.size() < ds.size()) && predict_naive(ds) == v;
    });
    suite("extension monotonicity", 5, [](Gen& g) {
        auto ds = g.pipeline(2, 5);
        if (predict_set(ds).verdict != Verdict::conflict) return true;
        DefenseDescriptor extra = g.descriptor(99);
        extra.stage = static_cast<Stage>(g.uniform(static_cast<int>(ds.back().stage), 2));
        extra.id = extra.family + "." + std::string(to_string(extra.stage));
        ds.push_back(extra);
        return predict_set(ds).verdict == Verdict::conflict;
    });
    suite("pair/set agreement", 6, [](Gen& g) {
        const auto ds = g.pipeline(2, 2);
        return predict_set(ds).verdict == predict_pair(ds[0], ds[1]).verdict;
    });
    suite("DEFCAT round-trip", 7, [](Gen& g) {
        std::vector<DefenseDescriptor> ds;
        for (int k = g.uniform(0, 6); k > 0; --k) ds.push_back(g.descriptor(k));
        const Catalog cat(ds, "generated");
        const auto parsed = parse_catalog(serialize_catalog(cat), ParseMode::strict);
        return parsed.ok() && *parsed.catalog == cat;
    });
    suite("GTRUTH round-trip", 8, [](Gen& g) {
        const auto& all = builtin_groundtruth();
        std::vector<GroundTruthRecord> subset;
        for (const auto& r : all) {
            if (g.coin(0.2)) subset.push_back(r);
        }
        const auto parsed = parse_groundtruth(serialize_groundtruth(subset), builtin_catalog());
        return parsed.ok() && *parsed.records == subset;
    });
    suite("derive_label monotonicity", 9, [](Gen& g) {
        GroundTruthRecord r;
        r.cohort = Cohort::empirical;
        for (int n = g.uniform(1, 6); n > 0; --n) {
            r.outcomes.push_back({"fmnist", "asr", static_cast<OutcomeColor>(g.uniform(0, 2))});
        }
        const Label before = derive_label(r);
        for (auto& o : r.outcomes) {
            if (o.color == OutcomeColor::green && g.coin()) o.color = OutcomeColor::red;
        }
        return !(before == Label::ineffective && derive_label(r) == Label::effective);
    });
    if (c.ok) c.detail = std::to_string(suites) + " suites x " + std::to_string(kPropertyCases) + " cases";
    return c;
}

Check planner_oracle() {
    Check c;
    const auto pool = builtin_catalog().restricted_to(evaluated_defense_ids()).descriptors();
    const auto subsets = defcon::testing::distinct_objective_subsets(pool, 4);
    int found = 0;
    for (const auto& subset : subsets) {
        const auto expected = defcon::testing::brute_force_plan(subset);
        const auto actual = plan_ordering(subset);
        std::string label;
        for (const auto& d : subset) label += d.id + " ";
        c.require(actual.has_value() == expected.has_value(), "found/none differs on " + label);
        if (actual && expected) {
            c.require(actual->ordering() == *expected, "first plan differs on " + label);
            ++found;
        }
    }
    if (c.ok) {
        c.detail = std::to_string(subsets.size()) + " subsets agree (" + std::to_string(found) + " with a plan)";
    }
    return c;
}

Check robustness() {
    Check c;
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(DEFCON_TEST_DATA_DIR "/malformed")) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    c.require(files.size() >= 20, "corpus has only " + std::to_string(files.size()) + " documents");
    for (const fs::path& f : files) {
        std::ifstream in(f, std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        std::vector<Diagnostic> diags;
        std::vector<std::string> args;
        if (f.extension() == ".defcat") {
            diags = parse_catalog(text.str(), ParseMode::strict).diagnostics;
            args = {"catalog", "validate", f.string()};
        } else {
            diags = parse_groundtruth(text.str(), builtin_catalog()).diagnostics;
            args = {"evaluate", "--groundtruth", f.string()};
        }
        const bool numbered = has_errors(diags) && std::all_of(diags.begin(), diags.end(),
                                                               [](const Diagnostic& d) { return d.line >= 1; });
        c.require(numbered, f.filename().string() + " lacks a line-numbered error");
        std::ostringstream out;
        std::ostringstream err;
        int code = -1;
        try {
            code = cli::run(args, out, err);
        } catch (...) {
            c.require(false, f.filename().string() + " escaped an exception");
        }
        c.require(code == cli::kExitError, f.filename().string() + " exited " + std::to_string(code));
    }
    if (c.ok) c.detail = std::to_string(files.size()) + " documents rejected with line numbers, exit 1";
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"prior-cohort golden", prior_golden},
        {"empirical-cohort golden", empirical_golden},
        {"per-combination golden", per_combination_golden},
        {"scaling and argued golden", scaling_golden},
        {"enumeration golden", enumeration_golden},
        {"property suites", property_suites},
        {"planner oracle", planner_oracle},
        {"malformed-input robustness", robustness},
    };
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c = {false, std::string("exception: ") + e.what()};
        }
        if (!c.ok) ++failures;
        std::cout << (c.ok ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << c.detail
                  << '\n';
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cout << criteria.size() - static_cast<std::size_t>(failures) << "/" << criteria.size()
              << " criteria passed in " << ms.count() << " ms\n";
    return failures == 0 ? 0 : 1;
}
