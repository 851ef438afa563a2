#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "benflow/flow_signal.hpp"
#include "benflow/matrix_core.hpp"

namespace benflow::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitNumeric = 3,
  kExitExpectation = 4,
};

struct RunConfig {
  int base = 10;
  double horizon = 1e4;
  double step = 1e-2;
  int weyl_k = 5;
  double distance_threshold = 0.02;
  double weyl_multiplier = 3.0;
  double rank_tol = 1e-10;
  double eigen_cluster_tol = 1e-8;
  double hyperbolicity_tol = 1e-9;
  std::uint64_t seed = 42;
  std::string format = "json";

  void validate() const;
  VerdictThresholds thresholds() const;
  SpectrumOptions spectrum_options() const;
};

// Fields present in `j` override `defaults`; unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j, RunConfig defaults = {});
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

}  // namespace benflow::cli
