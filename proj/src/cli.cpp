#include "defcon/cli.hpp"

#include "defcon/catalog.hpp"
#include "defcon/engine.hpp"
#include "defcon/eval.hpp"
#include "defcon/groundtruth.hpp"
#include "defcon/planner.hpp"
#include "defcon/render.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

namespace defcon::cli {

namespace {

// Signals a failure already formatted as the one diagnostic line.
struct CliFailure {
    std::string message;
};

struct Options {
    std::string format = "text";
    std::string catalog_path;
    bool lenient = false;

    bool json() const { return format == "json"; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure{"cannot read '" + path + "'"};
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string first_error(const std::string& path, const std::vector<Diagnostic>& diags) {
    std::size_t errors = 0;
    const Diagnostic* first = nullptr;
    for (const Diagnostic& d : diags) {
        if (d.severity != Severity::error) continue;
        if (first == nullptr) first = &d;
        ++errors;
    }
    std::string msg = path + ":" + std::to_string(first->line) + ": " + first->message;
    if (errors > 1) msg += " (+" + std::to_string(errors - 1) + " more)";
    return msg;
}

void print_warnings(const std::string& path, const std::vector<Diagnostic>& diags, std::ostream& err) {
    for (const Diagnostic& d : diags) {
        if (d.severity == Severity::warning) {
            err << "defcon: warning: " << path << ":" << d.line << ": " << d.message << '\n';
        }
    }
}

Catalog load_catalog(const Options& opt, std::ostream& err) {
    if (opt.catalog_path.empty()) return builtin_catalog();
    auto parsed = parse_catalog(read_file(opt.catalog_path),
                                opt.lenient ? ParseMode::lenient : ParseMode::strict);
    if (!parsed.ok()) throw CliFailure{first_error(opt.catalog_path, parsed.diagnostics)};
    print_warnings(opt.catalog_path, parsed.diagnostics, err);
    return std::move(*parsed.catalog);
}

std::vector<GroundTruthRecord> load_groundtruth(const std::string& path, const Catalog& catalog) {
    if (path.empty()) return builtin_groundtruth();
    auto parsed = parse_groundtruth(read_file(path), catalog);
    if (!parsed.ok()) throw CliFailure{first_error(path, parsed.diagnostics)};
    return std::move(*parsed.records);
}

int cmd_predict(const Options& opt, const std::vector<std::string>& ids, bool strict,
                std::ostream& out, std::ostream& err) {
    if (ids.size() < 2) throw CliFailure{"need at least two defenses"};
    const Catalog catalog = load_catalog(opt, err);
    const std::vector<DefenseDescriptor> defenses = catalog.resolve(ids);
    const SetTrace trace = predict_set(defenses);
    const Viability advisory = viability_advisory(defenses);
    if (opt.json()) {
        Json j;
        j["trace"] = to_json(trace);
        j["advisory"] = {{"viability", to_string(advisory)}, {"binding", false}};
        out << dump(j);
    } else {
        out << to_text(trace) << "viability (non-binding): " << to_string(advisory) << '\n';
    }
    return strict && trace.verdict == Verdict::conflict ? kExitStrictConflict : kExitOk;
}

// Distinct conflicting pairs over every stage-monotone ordering.
std::vector<PredictionTrace> blocking_pairs(std::span<const DefenseDescriptor> defenses) {
    std::vector<PredictionTrace> blocking;
    for_each_stage_ordering(defenses, [&](std::span<const DefenseDescriptor> ordering) {
        const SetTrace trace = predict_set(ordering);
        for (const PredictionTrace* t : trace.conflicts()) {
            const bool known = std::any_of(blocking.begin(), blocking.end(), [&](const PredictionTrace& b) {
                return b.d1_id == t->d1_id && b.d2_id == t->d2_id;
            });
            if (!known) blocking.push_back(*t);
        }
        return true;
    });
    std::sort(blocking.begin(), blocking.end(), [](const PredictionTrace& a, const PredictionTrace& b) {
        return std::tie(a.d1_id, a.d2_id) < std::tie(b.d1_id, b.d2_id);
    });
    return blocking;
}

int cmd_plan_defenses(const Options& opt, const std::vector<std::string>& ids, bool strict,
                      std::ostream& out, std::ostream& err) {
    const Catalog catalog = load_catalog(opt, err);
    const std::vector<DefenseDescriptor> defenses = catalog.resolve(ids);
    const std::optional<Plan> plan = plan_ordering(defenses);
    if (opt.json()) {
        Json j;
        if (plan) {
            j["plan"] = to_json(*plan);
        } else {
            j["plan"] = nullptr;
            Json blocking = Json::array();
            for (const PredictionTrace& t : blocking_pairs(defenses)) blocking.push_back(to_json(t));
            j["blocking"] = std::move(blocking);
        }
        out << dump(j);
    } else if (plan) {
        out << to_text(*plan);
    } else {
        out << "no effective ordering\nblocking pairs:\n";
        for (const PredictionTrace& t : blocking_pairs(defenses)) out << "  " << to_text(t);
    }
    return strict && !plan ? kExitStrictConflict : kExitOk;
}

int cmd_plan_goals(const Options& opt, const std::vector<std::string>& goals, std::size_t max_defenses,
                   bool strict, std::ostream& out, std::ostream& err) {
    const Catalog catalog = load_catalog(opt, err);
    const GoalPlanResult result = plan_for_goals({goals, max_defenses}, catalog);
    if (!result.ok()) {
        std::string msg;
        for (const std::string& e : result.errors) msg += (msg.empty() ? "" : "; ") + e;
        throw CliFailure{msg};
    }
    if (opt.json()) {
        Json j;
        Json plans = Json::array();
        for (const Plan& p : result.plans) plans.push_back(to_json(p));
        j["plans"] = std::move(plans);
        j["notes"] = result.notes;
        out << dump(j);
    } else {
        for (const Plan& p : result.plans) out << to_text(p);
        if (result.plans.empty()) out << "no effective ordering\n";
        for (const std::string& n : result.notes) out << "note: " << n << '\n';
    }
    return strict && result.plans.empty() ? kExitStrictConflict : kExitOk;
}

int cmd_evaluate(const Options& opt, const std::string& technique, const std::string& cohort,
                 const std::string& groundtruth_path, std::ostream& out, std::ostream& err) {
    const Catalog catalog = load_catalog(opt, err);
    const std::vector<GroundTruthRecord> records = load_groundtruth(groundtruth_path, catalog);

    std::vector<Technique> techniques;
    if (technique == "both") {
        techniques = {Technique::defcon, Technique::naive};
    } else {
        techniques = {*parse_technique(technique)};
    }
    std::vector<Cohort> cohorts;
    if (cohort == "all") {
        cohorts = {Cohort::prior, Cohort::empirical, Cohort::scaling, Cohort::argued};
    } else {
        cohorts = {*parse_cohort(cohort)};
    }

    std::vector<EvaluationReport> reports;
    for (const Cohort c : cohorts) {
        const bool present = std::any_of(records.begin(), records.end(),
                                         [&](const GroundTruthRecord& r) { return r.cohort == c; });
        // "all" skips cohorts a user-supplied file does not carry
        if (!present && cohort == "all") continue;
        for (const Technique t : techniques) {
            const Cohort selection[] = {c};
            reports.push_back(evaluate_technique(t, selection, catalog, records));
        }
    }
    if (reports.empty()) throw CliFailure{"no ground-truth records to evaluate"};

    if (opt.json()) {
        Json j;
        Json arr = Json::array();
        for (const EvaluationReport& r : reports) arr.push_back(to_json(r));
        j["reports"] = std::move(arr);
        out << dump(j);
    } else {
        for (std::size_t i = 0; i < reports.size(); ++i) {
            if (i != 0) out << '\n';
            out << to_text(reports[i]);
        }
    }
    return kExitOk;
}

int cmd_enumerate(const Options& opt, bool evaluated_only, std::ostream& out, std::ostream& err) {
    Catalog catalog = load_catalog(opt, err);
    if (evaluated_only) catalog = catalog.restricted_to(evaluated_defense_ids());
    const auto pairs = enumerate_pairs(catalog);
    Json arr = Json::array();
    std::ostringstream text;
    text << pairs.size() << " pairs\n"
         << std::left << std::setw(14) << "d1" << std::setw(14) << "d2" << std::setw(10) << "defcon"
         << std::setw(24) << "step" << "naive\n";
    for (const auto& [first, second] : pairs) {
        const PredictionTrace trace = predict_pair(first, second);
        const DefenseDescriptor both[] = {first, second};
        const Verdict naive = predict_naive(both);
        Json j;
        j["d1"] = first.id;
        j["d2"] = second.id;
        j["defcon"] = to_string(trace.verdict);
        j["fired_step"] = to_string(trace.fired_step);
        j["naive"] = to_string(naive);
        arr.push_back(std::move(j));
        text << std::setw(14) << first.id << std::setw(14) << second.id << std::setw(10)
             << to_string(trace.verdict) << std::setw(24) << to_string(trace.fired_step)
             << to_string(naive) << '\n';
    }
    if (opt.json()) {
        out << dump(Json{{"count", pairs.size()}, {"pairs", std::move(arr)}});
    } else {
        out << text.str();
    }
    return kExitOk;
}

int cmd_catalog_list(const Options& opt, std::ostream& out, std::ostream& err) {
    const Catalog catalog = load_catalog(opt, err);
    if (opt.json()) {
        Json arr = Json::array();
        for (const DefenseDescriptor& d : catalog.descriptors()) arr.push_back(to_json(d));
        out << dump(Json{{"provenance", catalog.provenance()}, {"defenses", std::move(arr)}});
        return kExitOk;
    }
    out << std::left << std::setw(15) << "id" << std::setw(6) << "stage" << std::setw(8) << "change"
        << std::setw(8) << "utility" << "objective\n";
    for (const DefenseDescriptor& d : catalog.descriptors()) {
        out << std::setw(15) << d.id << std::setw(6) << to_string(d.stage) << std::setw(8)
            << to_string(d.change) << std::setw(8) << to_string(d.utility) << d.objective << '\n';
    }
    return kExitOk;
}

int cmd_catalog_show(const Options& opt, const std::string& id, std::ostream& out, std::ostream& err) {
    const Catalog catalog = load_catalog(opt, err);
    const DefenseDescriptor* d = catalog.find(id);
    if (d == nullptr) throw CliFailure{"unknown defense id '" + id + "'"};
    out << (opt.json() ? dump(to_json(*d)) : to_text(*d));
    return kExitOk;
}

int cmd_catalog_validate(const Options& opt, const std::string& path, std::ostream& out) {
    const auto parsed = parse_catalog(read_file(path), opt.lenient ? ParseMode::lenient : ParseMode::strict);
    if (opt.json()) {
        Json diags = Json::array();
        for (const Diagnostic& d : parsed.diagnostics) {
            diags.push_back({{"line", d.line},
                             {"severity", d.severity == Severity::error ? "error" : "warning"},
                             {"message", d.message}});
        }
        Json j;
        j["file"] = path;
        j["valid"] = parsed.ok();
        j["defenses"] = parsed.ok() ? parsed.catalog->size() : 0;
        j["diagnostics"] = std::move(diags);
        out << dump(j);
    } else {
        for (const Diagnostic& d : parsed.diagnostics) out << path << ":" << to_string(d) << '\n';
        if (parsed.ok()) out << path << ": ok (" << parsed.catalog->size() << " defenses)\n";
    }
    if (!parsed.ok()) throw CliFailure{first_error(path, parsed.diagnostics)};
    return kExitOk;
}

int cmd_explain(const Options& opt, const std::string& step_name, std::ostream& out) {
    const auto step = parse_step(step_name);
    if (!step) {
        std::string known;
        for (const FiredStep s : kAllSteps) known += (known.empty() ? "" : ", ") + std::string(to_string(s));
        throw CliFailure{"unknown step '" + step_name + "' (expected one of " + known + ")"};
    }
    if (opt.json()) {
        out << dump(Json{{"step", to_string(*step)},
                         {"verdict", to_string(verdict_of(*step))},
                         {"rationale", rationale(*step)}});
    } else {
        out << to_string(*step) << " (" << to_string(verdict_of(*step)) << ")\n  " << rationale(*step) << '\n';
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Predicts whether combinations of ML defenses conflict.", "defcon"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--catalog", opt.catalog_path, "DEFCAT file replacing the built-in catalog");
    app.add_flag("--lenient", opt.lenient, "Warn on unknown keys and risk tokens instead of failing");

    auto* predict = app.add_subcommand("predict", "Predict conflicts for an ordered list of defenses");
    std::vector<std::string> predict_ids;
    bool strict = false;
    predict->add_option("ids", predict_ids, "Defense ids in application order");
    predict->add_flag("--strict", strict, "Exit 2 on a predicted conflict");

    auto* plan = app.add_subcommand("plan", "Search orderings or goal-covering combinations");
    std::vector<std::string> plan_defenses;
    std::vector<std::string> plan_goals;
    std::size_t max_defenses = 4;
    auto* defenses_opt = plan->add_option("--defenses", plan_defenses, "Defenses to order")->delimiter(',');
    auto* goals_opt = plan->add_option("--goals", plan_goals, "Risk or objective tokens to cover")->delimiter(',');
    defenses_opt->excludes(goals_opt);
    plan->add_option("--max", max_defenses, "Largest combination considered for --goals");
    plan->add_flag("--strict", strict, "Exit 2 when no plan exists");

    auto* evaluate = app.add_subcommand("evaluate", "Score techniques against ground truth");
    std::string technique = "both";
    std::string cohort = "all";
    std::string groundtruth_path;
    evaluate->add_option("--technique", technique)->check(CLI::IsMember({"defcon", "naive", "both"}));
    evaluate->add_option("--cohort", cohort)
        ->check(CLI::IsMember({"prior", "empirical", "scaling", "argued", "all"}));
    evaluate->add_option("--groundtruth", groundtruth_path, "GTRUTH file replacing the built-in records");

    auto* enumerate = app.add_subcommand("enumerate", "List evaluable pairs with both techniques' verdicts");
    bool evaluated_only = false;
    enumerate->add_flag("--evaluated-only", evaluated_only, "Restrict to the eleven evaluated defenses");

    auto* catalog = app.add_subcommand("catalog", "Inspect or validate defense catalogs");
    catalog->require_subcommand(1, 1);
    auto* catalog_list = catalog->add_subcommand("list", "List catalog entries");
    auto* catalog_show = catalog->add_subcommand("show", "Show one descriptor");
    std::string show_id;
    catalog_show->add_option("id", show_id)->required();
    auto* catalog_validate = catalog->add_subcommand("validate", "Validate a DEFCAT file");
    std::string validate_path;
    catalog_validate->add_option("file", validate_path)->required();

    auto* explain = app.add_subcommand("explain", "Print the rationale for a decision step");
    std::string step_name;
    explain->add_option("step", step_name)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "defcon: error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (*predict) return cmd_predict(opt, predict_ids, strict, out, err);
        if (*plan) {
            if (!plan_defenses.empty()) return cmd_plan_defenses(opt, plan_defenses, strict, out, err);
            if (!plan_goals.empty()) return cmd_plan_goals(opt, plan_goals, max_defenses, strict, out, err);
            throw CliFailure{"plan needs --defenses or --goals"};
        }
        if (*evaluate) return cmd_evaluate(opt, technique, cohort, groundtruth_path, out, err);
        if (*enumerate) return cmd_enumerate(opt, evaluated_only, out, err);
        if (*catalog_list) return cmd_catalog_list(opt, out, err);
        if (*catalog_show) return cmd_catalog_show(opt, show_id, out, err);
        if (*catalog_validate) return cmd_catalog_validate(opt, validate_path, out);
        if (*explain) return cmd_explain(opt, step_name, out);
    } catch (const CliFailure& f) {
        err << "defcon: error: " << f.message << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "defcon: error: " << e.what() << '\n';
        return kExitError;
    }
    err << "defcon: error: no command given\n";
    return kExitError;
}

}  // namespace defcon::cli
