#include "defcon/groundtruth.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace defcon;
using defcon::testing::record;

namespace {

std::set<std::string> ids_where(Cohort c, Label l) {
    std::set<std::string> out;
    for (const GroundTruthRecord& r : builtin_groundtruth()) {
        if (r.cohort == c && derive_label(r) == l) out.insert(r.id);
    }
    return out;
}

bool mentions(const std::vector<Diagnostic>& diags, std::string_view needle) {
    return std::any_of(diags.begin(), diags.end(),
                       [&](const Diagnostic& d) { return d.message.find(needle) != std::string::npos; });
}

}  // namespace

TEST(BuiltinGroundTruth, CohortSizes) {
    const auto& records = builtin_groundtruth();
    EXPECT_EQ(records.size(), 54u);
    auto count = [&](Cohort c) {
        return std::count_if(records.begin(), records.end(), [&](const GroundTruthRecord& r) { return r.cohort == c; });
    };
    EXPECT_EQ(count(Cohort::prior), 8);
    EXPECT_EQ(count(Cohort::empirical), 30);
    EXPECT_EQ(count(Cohort::scaling), 6);
    EXPECT_EQ(count(Cohort::argued), 10);
}

TEST(BuiltinGroundTruth, EmpiricalLabels) {
    const std::set<std::string> ineffective = {"C17", "C21", "C23", "C32", "C35", "C36", "C37", "C38"};
    EXPECT_EQ(ids_where(Cohort::empirical, Label::ineffective), ineffective);
    EXPECT_EQ(ids_where(Cohort::empirical, Label::effective).size(), 22u);
}

TEST(BuiltinGroundTruth, PriorLabels) {
    EXPECT_EQ(ids_where(Cohort::prior, Label::ineffective), (std::set<std::string>{"C4", "C5", "C6"}));
    EXPECT_EQ(ids_where(Cohort::prior, Label::effective),
              (std::set<std::string>{"C1", "C2", "C3", "C7", "C8"}));
}

TEST(BuiltinGroundTruth, ScalingAllEffectiveArguedAllIneffective) {
    EXPECT_EQ(ids_where(Cohort::scaling, Label::effective).size(), 6u);
    EXPECT_EQ(ids_where(Cohort::argued, Label::ineffective).size(), 10u);
}

TEST(BuiltinGroundTruth, SpotRecords) {
    EXPECT_EQ(record("C38").defenses, (std::vector<std::string>{"wmM.in", "out.post"}));
    EXPECT_EQ(record("C1").defenses, (std::vector<std::string>{"fair.pre.pate", "dp.pre.pate"}));
    const auto& records = builtin_groundtruth();
    const bool has_evs_fair = std::any_of(records.begin(), records.end(), [](const GroundTruthRecord& r) {
        return r.cohort == Cohort::argued && r.defenses == std::vector<std::string>{"evs.in", "fair.in"} &&
               r.direct_label == Label::ineffective;
    });
    EXPECT_TRUE(has_evs_fair);
}

TEST(BuiltinGroundTruth, DefensesResolveInStageOrder) {
    for (const GroundTruthRecord& r : builtin_groundtruth()) {
        const auto ds = builtin_catalog().resolve(r.defenses);
        for (std::size_t i = 1; i < ds.size(); ++i) EXPECT_LE(ds[i - 1].stage, ds[i].stage) << r.id;
    }
}

TEST(BuiltinGroundTruth, TextIsCanonical) {
    EXPECT_EQ(serialize_groundtruth(builtin_groundtruth()), builtin_groundtruth_text());
    const auto reparsed = parse_groundtruth(serialize_groundtruth(builtin_groundtruth()), builtin_catalog());
    ASSERT_TRUE(reparsed.ok());
    EXPECT_EQ(*reparsed.records, builtin_groundtruth());
}

TEST(DeriveLabel, Rules) {
    GroundTruthRecord r;
    r.cohort = Cohort::empirical;
    r.outcomes = {{"fmnist", "asr", OutcomeColor::green}, {"utkface", "asr", OutcomeColor::green}};
    EXPECT_EQ(derive_label(r), Label::effective);
    r.outcomes[1].color = OutcomeColor::orange;
    EXPECT_EQ(derive_label(r), Label::ineffective);
    r.outcomes[1].color = OutcomeColor::red;
    EXPECT_EQ(derive_label(r), Label::ineffective);
    EXPECT_EQ(derive_label(record("C21")), Label::ineffective);
    EXPECT_EQ(derive_label(record("C7")), Label::effective);
    r.outcomes.clear();
    EXPECT_THROW(derive_label(r), PreconditionError);
}

TEST(ParseGroundTruth, UnknownMetric) {
    const auto parsed = parse_groundtruth(R"([combination]
id = X1
cohort = empirical
defenses = evs.in, expl.post
outcome.fmnist.bogus = green
)",
                                          builtin_catalog());
    ASSERT_FALSE(parsed.ok());
    ASSERT_EQ(parsed.diagnostics.size(), 1u);
    EXPECT_EQ(parsed.diagnostics[0].line, 5u);
    EXPECT_TRUE(mentions(parsed.diagnostics, "unknown metric"));
}

TEST(ParseGroundTruth, StageOrderViolation) {
    const auto parsed = parse_groundtruth(R"([combination]
id = X1
cohort = prior
defenses = out.post, wmM.pre
label = effective
)",
                                          builtin_catalog());
    ASSERT_FALSE(parsed.ok());
    EXPECT_EQ(parsed.diagnostics[0].line, 4u);
    EXPECT_TRUE(mentions(parsed.diagnostics, "stage order"));
}

TEST(ParseGroundTruth, CohortLabelConsistency) {
    const auto labelled_empirical = parse_groundtruth(R"([combination]
id = X1
cohort = empirical
defenses = evs.in, expl.post
label = effective
)",
                                                      builtin_catalog());
    EXPECT_FALSE(labelled_empirical.ok());
    const auto unlabelled_prior = parse_groundtruth(R"([combination]
id = X1
cohort = prior
defenses = evs.in, expl.post
)",
                                                    builtin_catalog());
    EXPECT_FALSE(unlabelled_prior.ok());
    EXPECT_TRUE(mentions(unlabelled_prior.diagnostics, "requires a label"));
}

TEST(ParseGroundTruth, SourceIsOptionalAndQuoted) {
    const auto parsed = parse_groundtruth(R"([combination]
id = X1
cohort = argued
defenses = evs.in, dp.in
source = "hand \"written\""
label = ineffective
)",
                                          builtin_catalog());
    ASSERT_TRUE(parsed.ok());
    EXPECT_EQ(parsed.records->front().source, "hand \"written\"");
    EXPECT_EQ(parsed.records->front().direct_label, Label::ineffective);
}

TEST(ParseGroundTruth, DuplicateRecordId) {
    const auto parsed = parse_groundtruth(R"([combination]
id = X1
cohort = argued
defenses = evs.in, dp.in
label = ineffective

[combination]
id = X1
cohort = argued
defenses = evs.in, fair.in
label = ineffective
)",
                                          builtin_catalog());
    ASSERT_FALSE(parsed.ok());
    EXPECT_EQ(parsed.diagnostics[0].line, 8u);
}

TEST(MetricVocabulary, BuiltinMetrics) {
    const auto v = metric_vocabulary(builtin_catalog());
    for (const char* m : {"robacc", "asr", "wmacc", "rsd", "pval", "dp", "eqodds", "err"}) {
        EXPECT_NE(std::find(v.begin(), v.end(), m), v.end()) << m;
    }
}

TEST(GroundTruthEnums, RoundTrip) {
    for (const Cohort c : {Cohort::prior, Cohort::empirical, Cohort::scaling, Cohort::argued}) {
        EXPECT_EQ(parse_cohort(to_string(c)), c);
    }
    for (const OutcomeColor c : {OutcomeColor::green, OutcomeColor::orange, OutcomeColor::red}) {
        EXPECT_EQ(parse_color(to_string(c)), c);
    }
    EXPECT_EQ(parse_label("effective"), Label::effective);
    EXPECT_FALSE(parse_label("grey").has_value());
}
