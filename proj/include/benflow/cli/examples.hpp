#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "benflow/cli/config.hpp"

namespace benflow::cli {

struct ExampleResult {
  std::string id;
  nlohmann::json report;
  std::vector<std::string> failures;  // unmet expectations

  bool expectation_met() const noexcept { return failures.empty(); }
};

const std::vector<std::string>& example_ids();

// Throws UsageError for an unknown id.
ExampleResult run_example(const std::string& id, const RunConfig& cfg);

}  // namespace benflow::cli
