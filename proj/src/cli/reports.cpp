#include "benflow/cli/reports.hpp"

#include <cmath>
#include <sstream>

#include "benflow/errors.hpp"

namespace benflow::cli {

using nlohmann::json;

namespace {

std::string kind_key(RelationKind k) {
  switch (k) {
    case RelationKind::RealPartInSpan:
      return "real_part_in_span";
    case RelationKind::RationalArgumentGap:
      return "rational_argument_gap";
    case RelationKind::LogModulusInSpan:
      return "log_modulus_in_span";
  }
  return "";
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

json to_json(const WeylReport& w) {
  return {{"magnitudes", w.magnitudes},
          {"max_frequency", w.max_frequency},
          {"count", w.count},
          {"max_magnitude", w.max_magnitude()}};
}

json to_json(const BenfordReport& r) {
  const auto& h = r.digit_histogram;
  json freq = json::array(), law = json::array();
  const auto pmf = digit_law_pmf(r.base);
  for (int l = 1; l < r.base.value(); ++l) {
    freq.push_back(h.nonzero_frequency(l));
    law.push_back(pmf[static_cast<std::size_t>(l - 1)]);
  }
  json notes = r.notes;
  return {{"base", r.base.value()},
          {"horizon", r.horizon},
          {"step", r.step},
          {"sample_count", r.sample_count},
          {"excluded_sample_count", r.excluded_sample_count},
          {"significand_distance", r.significand_distance},
          {"digit_histogram",
           {{"counts", h.counts}, {"zeros", h.zeros}, {"total", h.total}, {"frequencies", freq}, {"benford", law}}},
          {"weyl", to_json(r.weyl)},
          {"significand_ecdf", r.significand_ecdf},
          {"verdict", to_string(r.verdict)},
          {"inconclusive", r.inconclusive},
          {"truncated", r.truncated},
          {"log_shift_rate", r.log_shift_rate},
          {"notes", notes}};
}

BenfordReport benford_report_from_json(const json& j) {
  return guarded("Benford report", [&] {
    BenfordReport r;
    r.base = Base(j.at("base").get<int>());
    r.horizon = j.at("horizon").get<double>();
    r.step = j.at("step").get<double>();
    r.sample_count = j.at("sample_count").get<std::size_t>();
    r.excluded_sample_count = j.at("excluded_sample_count").get<std::size_t>();
    r.significand_distance = j.at("significand_distance").get<double>();
    const json& h = j.at("digit_histogram");
    r.digit_histogram.base = r.base;
    r.digit_histogram.counts = h.at("counts").get<std::vector<std::size_t>>();
    r.digit_histogram.zeros = h.at("zeros").get<std::size_t>();
    r.digit_histogram.total = h.at("total").get<std::size_t>();
    const json& w = j.at("weyl");
    r.weyl.magnitudes = w.at("magnitudes").get<std::vector<double>>();
    r.weyl.max_frequency = w.at("max_frequency").get<int>();
    r.weyl.count = w.at("count").get<std::size_t>();
    r.significand_ecdf = j.at("significand_ecdf").get<std::vector<double>>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.inconclusive = j.at("inconclusive").get<bool>();
    r.truncated = j.at("truncated").get<bool>();
    r.log_shift_rate = j.at("log_shift_rate").get<double>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  });
}

json to_json(const CensusReport& r) {
  return {{"n", r.n},
          {"imaginary_axis_hits", r.imaginary_axis_hits},
          {"multiple_eigenvalue_hits", r.multiple_eigenvalue_hits},
          {"relation_hits", r.relation_hits},
          {"tol", r.tol},
          {"height", r.height},
          {"base", r.base},
          {"seed", r.seed},
          {"d", r.d},
          {"ensemble", r.ensemble},
          {"rng", r.rng}};
}

CensusReport census_report_from_json(const json& j) {
  return guarded("census report", [&] {
    CensusReport r;
    r.n = j.at("n").get<std::uint64_t>();
    r.imaginary_axis_hits = j.at("imaginary_axis_hits").get<std::uint64_t>();
    r.multiple_eigenvalue_hits = j.at("multiple_eigenvalue_hits").get<std::uint64_t>();
    r.relation_hits = j.at("relation_hits").get<std::uint64_t>();
    r.tol = j.at("tol").get<double>();
    r.height = j.at("height").get<int>();
    r.base = j.at("base").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.d = j.at("d").get<int>();
    r.ensemble = j.at("ensemble").get<std::string>();
    r.rng = j.at("rng").get<std::string>();
    if (r.imaginary_axis_hits > r.n || r.multiple_eigenvalue_hits > r.n || r.relation_hits > r.n)
      throw UsageError("census counts exceed n");
    return r;
  });
}

json to_json(const SpectrumInfo& s) {
  json pts = json::array(), dom = json::array();
  for (const auto& p : s.points)
    pts.push_back({{"re", p.z.real()}, {"im", p.z.imag()}, {"multiplicity", p.multiplicity},
                   {"jordan_index", p.jordan_index}});
  for (const auto& z : s.dominant_values()) dom.push_back({{"re", z.real()}, {"im", z.imag()}});
  json notes = s.notes;
  return {{"points", pts}, {"r", s.r}, {"kmax", s.kmax}, {"dominant", dom}, {"notes", notes}};
}

json to_json(const ResonanceVerdict& v) {
  json j = {{"resonant", v.resonant}, {"assumption", v.assumption}};
  if (v.witness) {
    const auto& w = *v.witness;
    json p = json::array();
    for (const auto& x : w.p) p.push_back(x.get_str());
    j["witness"] = {{"kind", kind_key(w.kind)},
                    {"target", w.target},
                    {"elements", w.elements},
                    {"q", w.q.get_str()},
                    {"p0", w.p0.get_str()},
                    {"p", p},
                    {"relation", w.describe()}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

std::string digits_csv(const BenfordReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "digit,frequency,benford\n";
  const auto pmf = digit_law_pmf(r.base);
  for (int l = 1; l < r.base.value(); ++l)
    os << l << "," << r.digit_histogram.nonzero_frequency(l) << "," << pmf[static_cast<std::size_t>(l - 1)] << "\n";
  return os.str();
}

}  // namespace benflow::cli
