#include "defcon/catalog.hpp"

#include <stdexcept>

namespace defcon {

namespace {

// Canonical form: serialize_catalog(builtin_catalog()) reproduces this text
// byte for byte.
constexpr std::string_view kBuiltinCatalog = R"cat(# provenance: built-in catalog: eleven evaluated defenses plus two PATE-context pre-training entries

[defense]
id = evs.in
family = evs
name = "Evasion Robustness (Adversarial Training)"
stage = in
change = global
protects_risks = evasion:explicit, backdoor:unintended
utility = down
objective = evasion_robustness
metric = robacc,up

[defense]
id = out.in
family = out
name = "Outlier Robustness (Fine-tuning)"
stage = in
change = global
protects_risks = backdoor:explicit, poisoning:explicit
utility = same
objective = outlier_robustness
metric = asr,down

[defense]
id = out.post
family = out
name = "Outlier Robustness (Pruning)"
stage = post
change = global
protects_risks = backdoor:explicit, poisoning:explicit
utility = down
objective = outlier_robustness
metric = asr,down

[defense]
id = wmM.pre
family = wmM
name = "Watermarking-M (Backdoors)"
stage = pre
change = local
uses_risks = backdoor
protects_risks = extraction:explicit
utility = same
objective = model_ownership
metric = wmacc,up

[defense]
id = wmM.in
family = wmM
name = "Watermarking-M (Loss)"
stage = in
change = global
uses_risks = backdoor
protects_risks = extraction:explicit
utility = down
objective = model_ownership
metric = wmacc,up

[defense]
id = wmM.post
family = wmM
name = "Watermarking-M (API)"
stage = post
change = local
protects_risks = extraction:explicit
utility = same
objective = model_ownership
metric = wmacc,up

[defense]
id = wmD.pre
family = wmD
name = "Watermarking-D (Backdoors)"
stage = pre
change = local
uses_risks = backdoor
protects_risks = unauthorized_data_use:explicit
utility = same
objective = data_ownership
metric = rsd,up

[defense]
id = fng.post
family = fng
name = "Fingerprinting (Dataset Inference)"
stage = post
change = none
protects_risks = extraction:explicit
utility = same
objective = model_ownership
metric = pval,down

[defense]
id = dp.in
family = dp
name = "Differential Privacy (DPSGD)"
stage = in
change = global
protects_risks = membership_inference:explicit, data_reconstruction:explicit, backdoor:unintended
utility = down
objective = privacy
metric = dp,down

[defense]
id = fair.in
family = fair
name = "Group Fairness (Regularization)"
stage = in
change = global
protects_risks = discrimination:explicit
utility = down
objective = fairness
metric = eqodds,down

[defense]
id = expl.post
family = expl
name = "Explanations (Attributions)"
stage = post
change = none
protects_risks = opacity:explicit
utility = same
objective = transparency
metric = err,down

[defense]
id = fair.pre.pate
family = fair
name = "Group Fairness (Fair Data, PATE context)"
stage = pre
change = local
protects_risks = discrimination:explicit
utility = down
objective = fairness
metric = eqodds,down

[defense]
id = dp.pre.pate
family = dp
name = "Differential Privacy (Private Data, PATE context)"
stage = pre
change = local
protects_risks = membership_inference:explicit
utility = down
objective = privacy
metric = dp,down
)cat";

}  // namespace

std::string_view builtin_catalog_text() { return kBuiltinCatalog; }

const Catalog& builtin_catalog() {
    static const Catalog catalog = [] {
        auto parsed = parse_catalog(kBuiltinCatalog, ParseMode::strict);
        if (!parsed.ok()) throw std::logic_error("built-in catalog does not parse");
        return std::move(*parsed.catalog);
    }();
    return catalog;
}

const std::vector<std::string>& evaluated_defense_ids() {
    static const std::vector<std::string> ids = {
        "evs.in",   "out.in",  "out.post", "wmM.pre", "wmM.in",   "wmM.post",
        "wmD.pre",  "fng.post", "dp.in",   "fair.in", "expl.post",
    };
    return ids;
}

}  // namespace defcon
