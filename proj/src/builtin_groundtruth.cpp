#include "defcon/groundtruth.hpp"

#include <stdexcept>

namespace defcon {

namespace {

// Canonical form: serialize_groundtruth(builtin_groundtruth()) reproduces
// this text byte for byte. Fairness metrics are not measured on fmnist, so
// those cells have no outcome line.
constexpr std::string_view kBuiltinGroundTruth = R"gt(# defense-combination ground truth

[combination]
id = C1
cohort = prior
defenses = fair.pre.pate, dp.pre.pate
source = "prior work"
label = effective

[combination]
id = C2
cohort = prior
defenses = evs.in, fng.post
source = "prior work"
label = effective

[combination]
id = C3
cohort = prior
defenses = dp.in, fng.post
source = "prior work"
label = effective

[combination]
id = C4
cohort = prior
defenses = wmM.pre, evs.in
source = "prior work"
label = ineffective

[combination]
id = C5
cohort = prior
defenses = wmD.pre, evs.in
source = "prior work"
label = ineffective

[combination]
id = C6
cohort = prior
defenses = wmM.pre, dp.in
source = "prior work"
label = ineffective

[combination]
id = C7
cohort = prior
defenses = wmD.pre, dp.in
source = "prior work"
label = effective

[combination]
id = C8
cohort = prior
defenses = dp.in, expl.post
source = "prior work"
label = effective

[combination]
id = C9
cohort = empirical
defenses = evs.in, wmM.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green
outcome.fmnist.robacc = green
outcome.utkface.robacc = green

[combination]
id = C10
cohort = empirical
defenses = out.in, fng.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.pval = green
outcome.utkface.pval = green

[combination]
id = C11
cohort = empirical
defenses = out.post, fng.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.pval = green
outcome.utkface.pval = green

[combination]
id = C12
cohort = empirical
defenses = evs.in, expl.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.err = green
outcome.utkface.err = green
outcome.fmnist.robacc = green
outcome.utkface.robacc = green

[combination]
id = C13
cohort = empirical
defenses = fair.in, out.post
source = "measured: pair, fmnist and utkface"
outcome.utkface.asr = green
outcome.utkface.eqodds = green

[combination]
id = C14
cohort = empirical
defenses = wmM.pre, fair.in
source = "measured: pair, fmnist and utkface"
outcome.utkface.wmacc = green
outcome.utkface.eqodds = green

[combination]
id = C15
cohort = empirical
defenses = fair.in, wmM.post
source = "measured: pair, fmnist and utkface"
outcome.utkface.wmacc = green
outcome.utkface.eqodds = green

[combination]
id = C16
cohort = empirical
defenses = wmD.pre, fair.in
source = "measured: pair, fmnist and utkface"
outcome.utkface.rsd = green
outcome.utkface.eqodds = green

[combination]
id = C17
cohort = empirical
defenses = fair.in, fng.post
source = "measured: pair, fmnist and utkface"
outcome.utkface.pval = red
outcome.utkface.eqodds = green

[combination]
id = C18
cohort = empirical
defenses = fair.in, expl.post
source = "measured: pair, fmnist and utkface"
outcome.utkface.err = green
outcome.utkface.eqodds = green

[combination]
id = C19
cohort = empirical
defenses = out.in, wmM.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green
outcome.fmnist.asr = green
outcome.utkface.asr = green

[combination]
id = C20
cohort = empirical
defenses = wmM.post, expl.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green
outcome.fmnist.err = green
outcome.utkface.err = green

[combination]
id = C21
cohort = empirical
defenses = wmD.pre, out.in
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = orange
outcome.fmnist.rsd = red
outcome.utkface.rsd = orange

[combination]
id = C22
cohort = empirical
defenses = wmD.pre, wmM.in
source = "measured: pair, fmnist and utkface"
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green
outcome.fmnist.rsd = green
outcome.utkface.rsd = green

[combination]
id = C23
cohort = empirical
defenses = wmD.pre, out.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.rsd = orange
outcome.utkface.rsd = orange

[combination]
id = C24
cohort = empirical
defenses = wmM.pre, expl.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.err = green
outcome.utkface.err = green
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green

[combination]
id = C25
cohort = empirical
defenses = wmM.in, expl.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.err = green
outcome.utkface.err = green
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green

[combination]
id = C26
cohort = empirical
defenses = wmD.pre, expl.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.err = green
outcome.utkface.err = green
outcome.fmnist.rsd = green
outcome.utkface.rsd = green

[combination]
id = C27
cohort = empirical
defenses = out.in, expl.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.err = green
outcome.utkface.err = green

[combination]
id = C28
cohort = empirical
defenses = out.post, expl.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.err = green
outcome.utkface.err = green

[combination]
id = C29
cohort = empirical
defenses = fng.post, expl.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.pval = green
outcome.utkface.pval = green
outcome.fmnist.err = green
outcome.utkface.err = green

[combination]
id = C30
cohort = empirical
defenses = wmD.pre, fng.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.pval = green
outcome.utkface.pval = green
outcome.fmnist.rsd = green
outcome.utkface.rsd = green

[combination]
id = C31
cohort = empirical
defenses = dp.in, wmM.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green
outcome.fmnist.dp = green
outcome.utkface.dp = green

[combination]
id = C32
cohort = empirical
defenses = wmD.pre, wmM.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.rsd = green
outcome.utkface.rsd = green
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = red

[combination]
id = C33
cohort = empirical
defenses = out.post, wmM.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green
outcome.fmnist.asr = green
outcome.utkface.asr = green

[combination]
id = C34
cohort = empirical
defenses = wmD.pre, wmM.pre
source = "measured: pair, fmnist and utkface"
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green
outcome.fmnist.rsd = green
outcome.utkface.rsd = green

[combination]
id = C35
cohort = empirical
defenses = evs.in, out.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.robacc = red
outcome.utkface.robacc = orange
outcome.fmnist.asr = green
outcome.utkface.asr = green

[combination]
id = C36
cohort = empirical
defenses = wmM.pre, out.in
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.wmacc = red
outcome.utkface.wmacc = orange

[combination]
id = C37
cohort = empirical
defenses = wmM.pre, out.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.wmacc = orange
outcome.utkface.wmacc = red

[combination]
id = C38
cohort = empirical
defenses = wmM.in, out.post
source = "measured: pair, fmnist and utkface"
outcome.fmnist.asr = orange
outcome.utkface.asr = red
outcome.fmnist.wmacc = orange
outcome.utkface.wmacc = green

[combination]
id = C39
cohort = scaling
defenses = evs.in, expl.post, wmM.post
source = "measured: triple, fmnist and utkface"
outcome.fmnist.robacc = green
outcome.utkface.robacc = green
outcome.fmnist.err = green
outcome.utkface.err = green
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green

[combination]
id = C40
cohort = scaling
defenses = out.in, expl.post, wmM.post
source = "measured: triple, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.err = green
outcome.utkface.err = green
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green

[combination]
id = C41
cohort = scaling
defenses = out.post, expl.post, wmM.post
source = "measured: triple, fmnist and utkface"
outcome.fmnist.asr = green
outcome.utkface.asr = green
outcome.fmnist.err = green
outcome.utkface.err = green
outcome.fmnist.wmacc = green
outcome.utkface.wmacc = green

[combination]
id = C42
cohort = scaling
defenses = wmD.pre, fair.in, expl.post
source = "measured: triple, fmnist and utkface"
outcome.utkface.wmacc = green
outcome.utkface.eqodds = green
outcome.utkface.err = green

[combination]
id = C43
cohort = scaling
defenses = wmD.pre, fair.in, wmM.post
source = "measured: triple, fmnist and utkface"
outcome.utkface.rsd = green
outcome.utkface.eqodds = green
outcome.utkface.wmacc = green

[combination]
id = C44
cohort = scaling
defenses = fair.in, out.post, expl.post
source = "measured: triple, fmnist and utkface"
outcome.utkface.eqodds = green
outcome.utkface.asr = green
outcome.utkface.err = green

[combination]
id = T1
cohort = argued
defenses = evs.in, out.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T2
cohort = argued
defenses = evs.in, wmM.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T3
cohort = argued
defenses = evs.in, dp.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T4
cohort = argued
defenses = evs.in, fair.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T5
cohort = argued
defenses = out.in, wmM.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T6
cohort = argued
defenses = out.in, dp.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T7
cohort = argued
defenses = out.in, fair.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T8
cohort = argued
defenses = wmM.in, dp.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T9
cohort = argued
defenses = wmM.in, fair.in
source = "argued: two global in-training defenses"
label = ineffective

[combination]
id = T10
cohort = argued
defenses = dp.in, fair.in
source = "argued: two global in-training defenses"
label = ineffective
)gt";

}  // namespace

std::string_view builtin_groundtruth_text() { return kBuiltinGroundTruth; }

const std::vector<GroundTruthRecord>& builtin_groundtruth() {
    static const std::vector<GroundTruthRecord> records = [] {
        auto parsed = parse_groundtruth(kBuiltinGroundTruth, builtin_catalog());
        if (!parsed.ok()) throw std::logic_error("built-in ground truth does not parse");
        return std::move(*parsed.records);
    }();
    return records;
}

}  // namespace defcon
