#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fnoise/verify.hpp"

namespace fnoise {

struct SuiteOptions {
  std::uint64_t seed = 1729;
  /// Runs only the listed criteria; empty runs all of them.
  std::vector<int> only;
};

struct CriterionResult {
  CriterionResult() = default;
  CriterionResult(int id, std::string title) : id(id), title(std::move(title)) {}

  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  nlohmann::ordered_json details;
};

nlohmann::ordered_json sweep_json(const SweepResult& sweep);

/// Runs the acceptance battery in order. The final criterion checks that all
/// earlier ones passed and the whole run stayed within its time budget.
std::vector<CriterionResult> run_suite(
    const SuiteOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace fnoise
