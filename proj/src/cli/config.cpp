#include "benflow/cli/config.hpp"

#include <cmath>
#include <set>

#include "benflow/cli/matrix_io.hpp"
#include "benflow/errors.hpp"

namespace benflow::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw UsageError("unknown config key '" + where + it.key() + "'");
}

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

void positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError(std::string(name) + " must be positive");
}

}  // namespace

void RunConfig::validate() const {
  if (base < 2) throw UsageError("base must be >= 2");
  positive(horizon, "horizon");
  positive(step, "step");
  if (!(step < horizon)) throw UsageError("step must be smaller than horizon");
  if (weyl_k < 1) throw UsageError("weyl_k must be >= 1");
  positive(distance_threshold, "thresholds.distance");
  positive(weyl_multiplier, "thresholds.weyl_multiplier");
  positive(rank_tol, "tolerances.rank");
  positive(eigen_cluster_tol, "tolerances.eigen_cluster");
  positive(hyperbolicity_tol, "tolerances.hyperbolicity");
  if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
}

VerdictThresholds RunConfig::thresholds() const {
  VerdictThresholds t;
  t.distance = distance_threshold;
  t.weyl_multiplier = weyl_multiplier;
  t.max_frequency = weyl_k;
  return t;
}

SpectrumOptions RunConfig::spectrum_options() const {
  SpectrumOptions o;
  o.cluster_tol = eigen_cluster_tol;
  o.rank_tol = rank_tol;
  return o;
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  reject_unknown(j, {"base", "horizon", "step", "weyl_k", "thresholds", "tolerances", "seed", "format"}, "");
  take(j, "base", c.base);
  take(j, "horizon", c.horizon);
  take(j, "step", c.step);
  take(j, "weyl_k", c.weyl_k);
  take(j, "seed", c.seed);
  take(j, "format", c.format);
  if (j.contains("thresholds")) {
    const json& t = j.at("thresholds");
    if (!t.is_object()) throw UsageError("config key 'thresholds' must be an object");
    reject_unknown(t, {"distance", "weyl_multiplier"}, "thresholds.");
    take(t, "distance", c.distance_threshold);
    take(t, "weyl_multiplier", c.weyl_multiplier);
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) throw UsageError("config key 'tolerances' must be an object");
    reject_unknown(t, {"rank", "eigen_cluster", "hyperbolicity"}, "tolerances.");
    take(t, "rank", c.rank_tol);
    take(t, "eigen_cluster", c.eigen_cluster_tol);
    take(t, "hyperbolicity", c.hyperbolicity_tol);
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

json to_json(const RunConfig& c) {
  return {{"base", c.base},
          {"horizon", c.horizon},
          {"step", c.step},
          {"weyl_k", c.weyl_k},
          {"thresholds", {{"distance", c.distance_threshold}, {"weyl_multiplier", c.weyl_multiplier}}},
          {"tolerances",
           {{"rank", c.rank_tol}, {"eigen_cluster", c.eigen_cluster_tol}, {"hyperbolicity", c.hyperbolicity_tol}}},
          {"seed", c.seed},
          {"format", c.format}};
}

}  // namespace benflow::cli
