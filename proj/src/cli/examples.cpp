#include "benflow/cli/examples.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "benflow/cli/reports.hpp"
#include "benflow/errors.hpp"
#include "benflow/exact.hpp"
#include "benflow/flow_signal.hpp"
#include "benflow/genericity.hpp"
#include "benflow/resonance.hpp"
#include "benflow/ud_mod1.hpp"

namespace benflow::cli {

namespace {

using nlohmann::json;
using Eigen::MatrixXd;

constexpr double kPi = std::numbers::pi;
constexpr double kLn10 = std::numbers::ln10;

class Checks {
 public:
  explicit Checks(ExampleResult& r) : r_(r) { r_.report["checks"] = json::array(); }

  void add(const std::string& name, bool ok, json detail = json::object()) {
    detail["name"] = name;
    detail["passed"] = ok;
    r_.report["checks"].push_back(detail);
    if (!ok) r_.failures.push_back(name);
  }

 private:
  ExampleResult& r_;
};

using ExactPair = std::pair<std::string, std::string>;

ResonanceVerdict exact_exp(const std::vector<ExactPair>& z, int b, const std::vector<int>& logs = {}) {
  const Base base(b);
  std::vector<int> extra;
  for (int n : logs)
    if (n != b) extra.push_back(n);
  const BasisPtr basis = SymbolBasis::standard(base, extra);
  std::vector<ExactComplex> zz;
  for (const auto& [re, im] : z) zz.push_back({parse_exact(re, basis, base), parse_exact(im, basis, base)});
  return is_exp_b_nonresonant(zz, base);
}

SamplingGrid grid_of(const RunConfig& c) { return SamplingGrid(c.horizon, c.step); }

json verdict_summary(const BenfordReport& r) {
  return {{"verdict", to_string(r.verdict)},
          {"significand_distance", r.significand_distance},
          {"weyl_max", r.weyl.max_magnitude()},
          {"weyl_threshold", r.weyl.threshold()},
          {"inconclusive", r.inconclusive}};
}

std::vector<Observable> random_observables(int d, int count, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.d = d;
  spec.distribution = Distribution::Gaussian;
  spec.n = static_cast<std::uint64_t>(count);
  spec.seed = seed;
  std::vector<Observable> out;
  for (int i = 0; i < count; ++i) out.emplace_back(sample_generator(spec, static_cast<std::uint64_t>(i)).matrix());
  return out;
}

json complex_list(const std::vector<std::complex<double>>& zs) {
  json a = json::array();
  for (const auto& z : zs) a.push_back({{"re", z.real()}, {"im", z.imag()}});
  return a;
}

void ex_2a(const RunConfig& cfg, ExampleResult& res) {
  Checks ck(res);
  const double horizon = 200.0, step = 1e-3;
  const Base b(10);
  const auto pmf = digit_law_pmf(b);
  for (const auto& [label, alpha] : std::vector<std::pair<std::string, double>>{
           {"ln2", std::numbers::ln2}, {"1", 1.0}, {"ln10", kLn10}}) {
    Synthetic s{alpha, 0, {{0.0, 1.0}}};
    const auto rep = benford_verdict(SignalSpec{s}, b, SamplingGrid(horizon, step), cfg.thresholds());
    double worst = 0.0;
    for (int l = 1; l <= 9; ++l)
      worst = std::max(worst, std::fabs(rep.digit_histogram.frequency(l) - pmf[static_cast<std::size_t>(l - 1)]));
    const double bound = 1.0 / (std::fabs(alpha) * horizon) + 0.002;
    ck.add("digit deviation of exp(" + label + " t)", worst < bound,
           {{"alpha", alpha}, {"max_deviation", worst}, {"bound", bound}});
  }
}

void ex_3_4_i(const RunConfig& cfg, ExampleResult& res) {
  Checks ck(res);
  for (const auto& [text, alpha] :
       std::vector<std::pair<std::string, double>>{{"1", 1.0}, {"-1/2", -0.5}, {"0", 0.0}}) {
    const auto v = exact_exp({{text, "0"}}, cfg.base);
    const bool expect_resonant = alpha == 0.0;
    ck.add("{" + text + "} exponential resonance", v.resonant == expect_resonant, {{"exact", to_json(v)}});
    const auto rep = benford_verdict(SignalSpec{Synthetic{alpha, 0, {{0.0, 1.0}}}}, Base(cfg.base), grid_of(cfg),
                                     cfg.thresholds());
    const Verdict want = alpha == 0.0 ? Verdict::Fail : Verdict::BenfordPass;
    ck.add("exp(" + text + " t) verdict", rep.verdict == want, verdict_summary(rep));
  }
}

void ex_3_4_ii(const RunConfig& cfg, ExampleResult& res) {
  Checks ck(res);
  const auto nonres = exact_exp({{"1", "pi"}, {"1", "-pi"}}, cfg.base);
  ck.add("{1 +- i pi} exponentially nonresonant", !nonres.resonant, {{"exact", to_json(nonres)}});
  const auto res_v = exact_exp({{"1", "2*pi/lnb"}, {"1", "-2*pi/lnb"}}, cfg.base);
  ck.add("{1 +- 2 pi i/ln b} exponentially resonant", res_v.resonant, {{"exact", to_json(res_v)}});

  const SquareMatrix a{{1.0, -kPi}, {kPi, 1.0}};
  const auto pass = benford_verdict(SignalSpec{ObservableOnFlow{a, Observable::entry(2, 0, 0)}}, Base(cfg.base),
                                    grid_of(cfg), cfg.thresholds());
  ck.add("entry (1,1) signal is Benford", pass.verdict == Verdict::BenfordPass, verdict_summary(pass));
  MatrixXd c(2, 2);
  c << 1.0, 0.0, 0.0, -1.0;
  const auto triv = benford_verdict(SignalSpec{ObservableOnFlow{a, Observable(c)}}, Base(cfg.base), grid_of(cfg),
                                    cfg.thresholds());
  ck.add("H(I) = H(J) = 0 gives the trivial signal", triv.verdict == Verdict::Trivial, verdict_summary(triv));
}

void ex_3_5(const RunConfig& cfg, ExampleResult& res) {
  Checks ck(res);
  bool all = true;
  json per_base = json::object();
  for (int b = 2; b <= 16; ++b) {
    const auto v = exact_exp({{"1", "pi"}, {"1", "-pi"}, {"ln10 - 1/2", "0"}}, b, {10});
    per_base[std::to_string(b)] = v.resonant;
    all = all && !v.resonant;
  }
  ck.add("spectrum exponentially nonresonant for b = 2..16", all, {{"resonant_by_base", per_base}});

  const SquareMatrix a = three_by_three_example_generator();
  double worst = 0.0;
  for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    const double num = eval_signal(SignalSpec{NormOnFlow{a, NormKind::Frobenius}}, t);
    worst = std::max(worst, std::fabs(num - frobenius_norm_signal_3x3_example(t)) / frobenius_norm_signal_3x3_example(t));
  }
  ck.add("Frobenius norm matches closed form", worst < 1e-10, {{"max_relative_error", worst}});

  const auto norm = benford_verdict(SignalSpec{NormOnFlow{a, NormKind::Frobenius}}, Base(cfg.base), grid_of(cfg),
                                    cfg.thresholds());
  ck.add("Frobenius norm signal is Benford", norm.verdict == Verdict::BenfordPass, verdict_summary(norm));
  const auto cubic = benford_verdict(cubic_counterexample_signal(), Base(10), grid_of(cfg), cfg.thresholds());
  ck.add("cubic observable is not 10-Benford", cubic.verdict == Verdict::Fail, verdict_summary(cubic));
}

void ex_3_8(const RunConfig& cfg, ExampleResult& res) {
  Checks ck(res);
  json rows = json::array();
  bool agree = true;
  for (const auto& [alpha, beta] :
       std::vector<std::pair<double, double>>{{1, 1}, {0, 1}, {0, -1}, {2, 0}, {1, -2}, {-1, 3}, {0, 0}}) {
    const SquareMatrix a = companion_from_second_order(alpha, beta);
    const bool crit = planar_criterion(a);
    const bool hyp = is_hyperbolic(a, cfg.hyperbolicity_tol);
    const bool closed = (1.0 + alpha * alpha) * std::fabs(beta) > beta;
    agree = agree && crit == hyp && crit == closed;
    rows.push_back({{"alpha", alpha}, {"beta", beta}, {"criterion", crit}, {"hyperbolic", hyp}, {"closed_form", closed}});
  }
  ck.add("planar criterion agrees with the spectrum", agree, {{"cases", rows}});

  const auto damped = benford_verdict(
      SignalSpec{ObservableOnFlow{companion_from_second_order(1, 1), Observable::entry(2, 0, 0)}}, Base(cfg.base),
      grid_of(cfg), cfg.thresholds());
  ck.add("y'' + y' + y = 0 solution is Benford", damped.verdict == Verdict::BenfordPass, verdict_summary(damped));
  const auto osc = benford_verdict(
      SignalSpec{ObservableOnFlow{companion_from_second_order(0, 1), Observable::entry(2, 0, 0)}}, Base(cfg.base),
      grid_of(cfg), cfg.thresholds());
  ck.add("y'' + y = 0 solution is not Benford", osc.verdict == Verdict::Fail, verdict_summary(osc));
}

void ex_3_9(const RunConfig& cfg, ExampleResult& res) {
  Checks ck(res);
  const SquareMatrix a{{1.0, 1.0}, {1.0, 1.0}};
  const double t = 0.7;
  const MatrixXd closed = 0.5 * std::exp(2 * t) * a.matrix() - 0.5 * (a.matrix() - 2.0 * MatrixXd::Identity(2, 2));
  const double err = (expm(a, t).matrix() - closed).cwiseAbs().maxCoeff();
  ck.add("flow matches the closed form", err < 1e-12, {{"max_error", err}});

  MatrixXd c(2, 2);
  c << 1.0, -1.0, 0.0, 0.0;
  const Observable h(c);
  const double h_one = eval_signal(SignalSpec{ObservableOnFlow{a, h}}, 3.0);
  ck.add("H = [.]11 - [.]12 gives H(phi_t) = 1", std::fabs(h_one - 1.0) < 1e-9, {{"value_at_3", h_one}});
  ck.add("constant signal is not trivial", !triviality_check(a, h));
  const auto rep = benford_verdict(SignalSpec{ObservableOnFlow{a, h}}, Base(cfg.base), grid_of(cfg), cfg.thresholds());
  ck.add("constant signal is not Benford", rep.verdict == Verdict::Fail, verdict_summary(rep));

  int pass = 0;
  const auto obs = random_observables(2, 20, cfg.seed);
  for (const auto& o : obs)
    if (benford_verdict(SignalSpec{ObservableOnFlow{a, o}}, Base(cfg.base), grid_of(cfg), cfg.thresholds()).verdict ==
        Verdict::BenfordPass)
      ++pass;
  ck.add("random observables mostly Benford", pass >= 15, {{"pass", pass}, {"of", obs.size()}});
}

void ex_3_12(const RunConfig& cfg, ExampleResult& res) {
  Checks ck(res);
  const SquareMatrix a{{1.0, 1.0}, {1.0, 1.0}};
  const auto sp = spectrum(a, cfg.spectrum_options());
  const auto dom = sp.dominant_values();
  ck.add("sigma_dom(phi) = {2}", dom.size() == 1 && std::abs(dom[0] - 2.0) < 1e-8, {{"dominant", complex_list(dom)}});
  const auto sq = spectrum(-a, cfg.spectrum_options());
  const auto domq = sq.dominant_values();
  ck.add("sigma_dom(psi) = {0}", domq.size() == 1 && std::abs(domq[0]) < 1e-8, {{"dominant", complex_list(domq)}});
  const auto v2 = exact_exp({{"2", "0"}}, cfg.base);
  ck.add("{2} exponentially nonresonant", !v2.resonant, {{"exact", to_json(v2)}});
  const auto v0 = exact_exp({{"0", "0"}}, cfg.base);
  ck.add("{0} exponentially resonant", v0.resonant, {{"exact", to_json(v0)}});

  int fail = 0;
  const auto obs = random_observables(2, 20, cfg.seed);
  for (const auto& o : obs)
    if (benford_verdict(SignalSpec{ObservableOnFlow{-a, o}}, Base(cfg.base), grid_of(cfg), cfg.thresholds()).verdict ==
        Verdict::Fail)
      ++fail;
  ck.add("time-reversed flow: random observables mostly not Benford", fail >= 15, {{"fail", fail}, {"of", obs.size()}});
}

void ex_3_14(const RunConfig& cfg, ExampleResult& res) {
  Checks ck(res);
  const double w = 2.0 * kPi / kLn10;
  const SquareMatrix phi{{1.0, -w}, {w, 1.0}};
  const SquareMatrix psi{{1.0, -4.0 * kPi / kLn10}, {kPi / kLn10, 1.0}};
  const auto v = exact_exp({{"1", "2*pi/ln10"}, {"1", "-2*pi/ln10"}}, 10);
  const bool witness_ok = v.resonant && v.witness && v.witness->q == 2 && v.witness->p.size() == 1 &&
                          v.witness->p[0] == 1;
  ck.add("spectrum exponentially 10-resonant with q = 2, p = (1)", witness_ok, {{"exact", to_json(v)}});

  const Base ten(10);
  const auto np = benford_verdict(SignalSpec{NormOnFlow{phi, NormKind::Spectral}}, ten, grid_of(cfg), cfg.thresholds());
  ck.add("|phi_t| is 10-Benford", np.verdict == Verdict::BenfordPass, verdict_summary(np));
  const auto nq = benford_verdict(SignalSpec{NormOnFlow{psi, NormKind::Spectral}}, ten, grid_of(cfg), cfg.thresholds());
  json d = verdict_summary(nq);
  d["weyl_magnitudes"] = nq.weyl.magnitudes;
  ck.add("|psi_t| is not 10-Benford", nq.verdict == Verdict::Fail && !nq.inconclusive, d);

  const auto q_hat = pushforward_fourier(
      [](double x) {
        const double c = cos_two_pi(2.0 * x);
        return frac(x + 0.5 * std::log10(25.0 - 9.0 * c + 3.0 * std::fabs(sin_two_pi(x)) * std::sqrt(82.0 - 18.0 * c)));
      },
      2, 1000000);
  ck.add("pushforward of Q is not uniform", std::abs(q_hat.value) > 0.05, {{"abs_Q_hat_2", std::abs(q_hat.value)}});

  int fail = 0;
  const auto obs = random_observables(2, 20, cfg.seed);
  for (const auto& o : obs)
    if (benford_verdict(SignalSpec{ObservableOnFlow{phi, o}}, ten, grid_of(cfg), cfg.thresholds()).verdict ==
        Verdict::Fail)
      ++fail;
  ck.add("observables of phi mostly not 10-Benford", fail >= 15, {{"fail", fail}, {"of", obs.size()}});
}

const std::map<std::string, std::function<void(const RunConfig&, ExampleResult&)>>& registry() {
  static const std::map<std::string, std::function<void(const RunConfig&, ExampleResult&)>> r{
      {"ex-2a", ex_2a},     {"ex-3-4-i", ex_3_4_i}, {"ex-3-4-ii", ex_3_4_ii}, {"ex-3-5", ex_3_5},
      {"ex-3-8", ex_3_8},   {"ex-3-9", ex_3_9},     {"ex-3-12", ex_3_12},     {"ex-3-14", ex_3_14},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids{"ex-2a",  "ex-3-4-i", "ex-3-4-ii", "ex-3-5",
                                            "ex-3-8", "ex-3-9",   "ex-3-12",   "ex-3-14"};
  return ids;
}

ExampleResult run_example(const std::string& id, const RunConfig& cfg) {
  const auto& r = registry();
  auto it = r.find(id);
  if (it == r.end()) {
    std::string list;
    for (const auto& k : example_ids()) list += " " + k;
    throw UsageError("unknown example '" + id + "'; known ids:" + list);
  }
  cfg.validate();
  ExampleResult res;
  res.id = id;
  res.report["id"] = id;
  it->second(cfg, res);
  res.report["expectation_met"] = res.expectation_met();
  return res;
}

}  // namespace benflow::cli
