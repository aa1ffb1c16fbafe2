#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hypertree::verify {

/// Outcome of one acceptance criterion. `measured` is a short human-readable
/// summary; `values` carries the numbers behind it.
struct CriterionResult {
  std::string name;
  std::string suite;
  std::string description;
  bool pass = false;
  std::string measured;
  nlohmann::json values = nlohmann::json::object();
  double seconds = 0;
};

struct Criterion {
  std::string name;
  std::string suite;
  std::string description;
};

const std::vector<Criterion>& criteria();
std::vector<std::string> suite_names();

/// Throws ValidationError for an unknown name.
CriterionResult run_criterion(const std::string& name);

/// "all" runs every criterion. Throws ValidationError for an unknown suite.
std::vector<CriterionResult> run_suite(const std::string& suite);

nlohmann::json to_json(const CriterionResult& r);

/// One line: "PASS name (1.23 s): measured".
std::string format_line(const CriterionResult& r);

}  // namespace hypertree::verify
