#pragma once

// Random generators and small helpers shared by the test binaries.

#include "defcon/catalog.hpp"
#include "defcon/engine.hpp"
#include "defcon/groundtruth.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace defcon::testing {

constexpr int kPropertyCases = 1000;

class Gen {
public:
    explicit Gen(std::uint32_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[static_cast<std::size_t>(uniform(0, static_cast<int>(items.size()) - 1))];
    }

    Stage stage() { return static_cast<Stage>(uniform(0, 2)); }
    ChangeScope change() { return static_cast<ChangeScope>(uniform(0, 2)); }

    std::vector<std::string> risk_subset(double p = 0.3) {
        std::vector<std::string> out;
        for (const std::string_view r : kRiskVocabulary) {
            if (coin(p)) out.emplace_back(r);
        }
        std::shuffle(out.begin(), out.end(), rng_);
        return out;
    }

    std::vector<RiskTag> risk_tags(double p = 0.3) {
        std::vector<RiskTag> out;
        for (std::string& r : risk_subset(p)) {
            out.push_back({std::move(r), static_cast<RiskQualifier>(uniform(0, 2))});
        }
        return out;
    }

    std::string display_name() {
        static const std::vector<std::string> pieces = {"Adv", "Training", "#1", "\"quoted\"", "a\\b",
                                                        "=",   "x, y",     "(z)", "pate:ctx", "é"};
        if (coin(0.2)) return {};
        std::string out = pick(pieces);
        for (int n = uniform(0, 3); n > 0; --n) out += " " + pick(pieces);
        return out;
    }

    /// A descriptor satisfying every validate_descriptor invariant. `tag`
    /// keeps ids unique within one draw.
    DefenseDescriptor descriptor(int tag) {
        DefenseDescriptor d;
        d.stage = stage();
        d.family = (coin() ? "fam" : "Def") + std::to_string(tag);
        d.id = d.family + "." + std::string(to_string(d.stage));
        if (coin(0.2)) d.id += ".ctx" + std::to_string(uniform(0, 9));
        d.display_name = display_name();
        d.change = change();
        d.uses_risks = risk_subset();
        d.protects_risks = risk_tags();
        d.utility = static_cast<UtilityImpact>(uniform(0, 2));
        d.objective = "obj_" + std::to_string(uniform(0, 5));
        if (coin(0.7)) {
            d.metric = MetricSpec{"m" + std::to_string(uniform(0, 4)), static_cast<MetricDirection>(uniform(0, 1))};
        }
        return d;
    }

    /// Distinct-id descriptors sorted into a stage-monotone pipeline.
    std::vector<DefenseDescriptor> pipeline(int min_size, int max_size) {
        std::vector<DefenseDescriptor> out;
        const int n = uniform(min_size, max_size);
        for (int i = 0; i < n; ++i) out.push_back(descriptor(i));
        std::stable_sort(out.begin(), out.end(),
                         [](const DefenseDescriptor& a, const DefenseDescriptor& b) { return a.stage < b.stage; });
        return out;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

inline std::vector<std::string> ids_of(std::span<const DefenseDescriptor> ds) {
    std::vector<std::string> out;
    for (const DefenseDescriptor& d : ds) out.push_back(d.id);
    return out;
}

inline const GroundTruthRecord& record(const std::string& id) {
    for (const GroundTruthRecord& r : builtin_groundtruth()) {
        if (r.id == id) return r;
    }
    throw std::out_of_range("no record " + id);
}

}  // namespace defcon::testing
