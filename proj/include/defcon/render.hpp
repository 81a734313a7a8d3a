#pragma once

// Text and canonical-JSON renderings shared by the CLI and the tests.

#include "defcon/catalog.hpp"
#include "defcon/engine.hpp"
#include "defcon/eval.hpp"
#include "defcon/planner.hpp"

#include "json.hpp"

#include <string>

namespace defcon {

using Json = nlohmann::ordered_json;

Json to_json(const DefenseDescriptor& d);
Json to_json(const PredictionTrace& t);
Json to_json(const SetTrace& t);
Json to_json(const Plan& p);
/// Keys: technique, cohort, matrix, balanced_accuracy, rows.
Json to_json(const EvaluationReport& r);

std::string to_text(const DefenseDescriptor& d);
std::string to_text(const PredictionTrace& t);
std::string to_text(const SetTrace& t);
std::string to_text(const Plan& p);
std::string to_text(const EvaluationReport& r);

/// Two-space indented dump terminated by a newline.
std::string dump(const Json& j);

}  // namespace defcon
