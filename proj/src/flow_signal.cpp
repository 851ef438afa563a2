#include "benflow/flow_signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "benflow/errors.hpp"

namespace benflow {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr std::size_t kResyncInterval = 256;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct ScaledSamples {
  std::vector<double> t;
  std::vector<double> g;
  double rate = 0.0;
  bool truncated = false;
  std::string note;
};

double synthetic_scaled(const Synthetic& s, double t) {
  double sum = 0.0;
  for (const auto& m : s.modes) sum += m.weight * std::cos(m.omega * t);
  return s.k == 0 ? sum : std::pow(t, s.k) * sum;
}

// Samples g(t) = e^{-rt} F(e^{tA}) with block stepping and periodic resync.
template <class F>
ScaledSamples sample_flow(const SquareMatrix& a, const SamplingGrid& grid, F&& functional) {
  ScaledSamples out;
  out.rate = spectrum(a).r;
  const SquareMatrix stepper = expm_shifted(a, grid.step(), out.rate);
  MatrixXd x;
  out.t.reserve(grid.count());
  out.g.reserve(grid.count());
  for (std::size_t n = 0; n < grid.count(); ++n) {
    const double t = grid.time(n);
    try {
      if (n % kResyncInterval == 0)
        x = expm_shifted(a, t, out.rate).matrix();
      else
        x = x * stepper.matrix();
    } catch (const OverflowError& e) {
      out.truncated = true;
      out.note = "sampling stopped at t = " + std::to_string(t) + ": " + e.what();
      break;
    }
    if (!x.allFinite()) {
      out.truncated = true;
      out.note = "sampling stopped at t = " + std::to_string(t) + ": non-finite flow matrix";
      break;
    }
    out.t.push_back(t);
    out.g.push_back(functional(x));
  }
  return out;
}

ScaledSamples sample_scaled(const ScaledSignal& s, const SamplingGrid& grid) {
  ScaledSamples out;
  out.rate = s.rate;
  out.t.reserve(grid.count());
  out.g.reserve(grid.count());
  for (std::size_t n = 0; n < grid.count(); ++n) {
    const double t = grid.time(n);
    const double g = s.scaled(t);
    if (!std::isfinite(g)) {
      out.truncated = true;
      out.note = "sampling stopped at t = " + std::to_string(t) + ": non-finite value";
      break;
    }
    out.t.push_back(t);
    out.g.push_back(g);
  }
  return out;
}

BenfordReport report_from_samples(const ScaledSamples& s, Base b, double horizon, double step,
                                  const VerdictThresholds& thr) {
  if (!(thr.distance > 0.0) || !(thr.weyl_multiplier > 0.0) || thr.max_frequency < 1 || !(thr.zero_threshold >= 0.0))
    throw UsageError("verdict thresholds must be positive");
  BenfordReport rep;
  rep.base = b;
  rep.horizon = horizon;
  rep.step = step;
  rep.sample_count = s.g.size();
  rep.truncated = s.truncated;
  rep.log_shift_rate = s.rate;
  if (!s.note.empty()) rep.notes.push_back(s.note);
  if (s.rate != 0.0)
    rep.notes.push_back("log-magnitudes sampled as rate * t + ln|g(t)| with rate " + std::to_string(s.rate));

  std::vector<double> logs;
  logs.reserve(s.g.size());
  double running = 0.0;
  for (std::size_t n = 0; n < s.g.size(); ++n) {
    const double a = std::fabs(s.g[n]);
    running = std::max(running, a);
    if (a == 0.0 || !std::isfinite(a) || a < thr.zero_threshold * running) {
      ++rep.excluded_sample_count;
      continue;
    }
    logs.push_back((s.rate * s.t[n] + std::log(a)) / b.ln());
  }

  rep.digit_histogram.base = b;
  rep.digit_histogram.counts.assign(static_cast<std::size_t>(b.value() - 1), 0);
  if (logs.empty()) {
    rep.verdict = Verdict::Trivial;
    rep.digit_histogram.zeros = rep.excluded_sample_count;
    rep.digit_histogram.total = rep.excluded_sample_count;
    rep.notes.push_back("every sample vanishes below the zero threshold");
    return rep;
  }

  std::vector<double> sig(logs.size());
  for (std::size_t n = 0; n < logs.size(); ++n) sig[n] = significand_from_log(logs[n], b);
  rep.significand_distance = empirical_distance(sig, b);
  rep.digit_histogram = digit_frequencies(sig, b);
  const SignificandECDF ecdf(sig, b);
  for (int j = 0; j <= 20; ++j) rep.significand_ecdf.push_back(j == 20 ? 1.0 : ecdf(std::pow(b.value(), j / 20.0)));
  rep.digit_histogram.zeros = rep.excluded_sample_count;
  rep.digit_histogram.total += rep.excluded_sample_count;

  if (logs.size() < 100) {
    rep.verdict = Verdict::Fail;
    rep.inconclusive = true;
    rep.notes.push_back("fewer than 100 usable samples; Weyl statistics skipped");
    return rep;
  }
  rep.weyl = cud_report(logs, thr.max_frequency);

  const double theta = rep.weyl.threshold(thr.weyl_multiplier);
  const double wmax = rep.weyl.max_magnitude();
  if (rep.significand_distance < thr.distance && wmax < theta) {
    rep.verdict = Verdict::BenfordPass;
  } else {
    rep.verdict = Verdict::Fail;
    rep.inconclusive = !(rep.significand_distance > 2.0 * thr.distance || wmax > 2.0 * theta);
    if (rep.inconclusive) rep.notes.push_back("statistics between the pass and fail thresholds");
  }
  return rep;
}

}  // namespace

Observable::Observable(MatrixXd c) : c_(std::move(c)) {
  if (c_.rows() != c_.cols() || c_.rows() < 1) throw UsageError("observable coefficients must be square");
  if (!c_.allFinite()) throw UsageError("observable coefficients must be finite");
}

Observable Observable::entry(int d, int i, int j) {
  if (i < 0 || j < 0 || i >= d || j >= d) throw UsageError("observable entry out of range");
  MatrixXd c = MatrixXd::Zero(d, d);
  c(i, j) = 1.0;
  return Observable(std::move(c));
}

double Observable::operator()(const MatrixXd& m) const {
  if (m.rows() != c_.rows() || m.cols() != c_.cols()) throw UsageError("observable dimension mismatch");
  return c_.cwiseProduct(m).sum();
}

double matrix_norm(const MatrixXd& m, NormKind kind) {
  switch (kind) {
    case NormKind::Frobenius:
      return m.norm();
    case NormKind::Max:
      return m.cwiseAbs().maxCoeff();
    case NormKind::Spectral:
      break;
  }
  if (m.rows() == 1) return std::fabs(m(0, 0));
  if (m.rows() == 2) {
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    return 0.5 * (std::hypot(a + d, c - b) + std::hypot(a - d, b + c));
  }
  Eigen::JacobiSVD<MatrixXd> svd(m);
  return svd.singularValues()(0);
}

void Synthetic::validate() const {
  if (k < 0) throw UsageError("synthetic signal needs k >= 0");
  if (!std::isfinite(r)) throw UsageError("synthetic rate must be finite");
  if (modes.empty() || std::all_of(modes.begin(), modes.end(), [](const Mode& m) { return m.weight == 0.0; }))
    throw UsageError("synthetic signal needs a nonzero weight");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (!(modes[i].omega >= 0.0) || !std::isfinite(modes[i].weight))
      throw UsageError("synthetic modes need omega >= 0 and finite weights");
    for (std::size_t j = 0; j < i; ++j)
      if (modes[j].omega == modes[i].omega) throw UsageError("synthetic mode frequencies must be distinct");
  }
}

double eval_signal(const SignalSpec& spec, double t) {
  if (!std::isfinite(t)) throw DomainError("signal time must be finite");
  return std::visit(
      Overloaded{
          [&](const ObservableOnFlow& s) {
            if (s.observable.dim() != s.generator.dim()) throw UsageError("observable dimension mismatch");
            return s.observable(expm(s.generator, t).matrix());
          },
          [&](const NormOnFlow& s) { return matrix_norm(expm(s.generator, t).matrix(), s.norm); },
          [&](const Synthetic& s) {
            s.validate();
            return std::exp(s.r * t) * synthetic_scaled(s, t);
          },
      },
      spec);
}

double frobenius_norm_signal_3x3_example(double t) {
  const double alpha = std::numbers::ln10 - 0.5;
  if (t >= 0.0) return std::exp(alpha * t) * std::sqrt(1.0 + 2.0 * std::exp(-2.0 * (alpha - 1.0) * t));
  return std::sqrt(2.0 * std::exp(2.0 * t) + std::exp(2.0 * alpha * t));
}

SquareMatrix three_by_three_example_generator() {
  const double pi = std::numbers::pi;
  const double alpha = std::numbers::ln10 - 0.5;
  return SquareMatrix{{1.0, -pi, 0.0}, {pi, 1.0, 0.0}, {0.0, 0.0, alpha}};
}

ScaledSignal cubic_counterexample_signal() {
  const double a = std::numbers::ln10 - 0.5;
  return {1.0 + 2.0 * a, [a](double t) {
            const double c = cos_two_pi(0.5 * t);
            const double e = std::exp(-(a - 1.0) * t);
            return c * (3.0 - 3.0 * e * c + e * e * c * c);
          }};
}

bool triviality_check(const SquareMatrix& a, const Observable& obs, double tol) {
  if (obs.dim() != a.dim()) throw UsageError("observable dimension mismatch");
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  const int d = a.dim();
  MatrixXd p = MatrixXd::Identity(d, d);
  std::vector<double> values;
  double scale = 0.0;
  for (int j = 0; j < d; ++j) {
    values.push_back(obs(p));
    scale = std::max(scale, p.norm());
    p = p * a.matrix();
  }
  scale *= obs.coefficients().norm();
  return std::all_of(values.begin(), values.end(), [&](double v) { return std::fabs(v) <= tol * scale; });
}

Observable build_observable_for_modes(const SquareMatrix& a, std::span<const std::complex<double>> modes,
                                      std::span<const double> weights) {
  if (modes.size() != weights.size()) throw UsageError("one weight per mode is required");
  if (modes.empty()) throw UsageError("at least one mode is required");
  const int d = a.dim();
  const double anorm = std::max(1.0, a.matrix().cwiseAbs().colwise().sum().maxCoeff());
  const SpectrumInfo info = spectrum(a);
  Eigen::EigenSolver<MatrixXd> solver(a.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvector computation did not converge");

  std::vector<VectorXd> rows;
  std::vector<double> rhs;
  VectorXd s = VectorXd::Zero(d);
  std::vector<std::complex<double>> chosen;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const auto z = modes[m];
    if (z.imag() < 0.0) throw UsageError("modes must be given with Im z >= 0");
    auto it = std::min_element(info.points.begin(), info.points.end(), [&](const auto& p, const auto& q) {
      return std::abs(p.z - z) < std::abs(q.z - z);
    });
    if (std::abs(it->z - z) > 1e-6 * anorm) throw DomainError("mode is not an eigenvalue of the generator");
    if (it->multiplicity != 1 || it->jordan_index != 0)
      throw UnsupportedStructureError("mode " + std::to_string(z.real()) + "+" + std::to_string(z.imag()) +
                                      "i is not a simple eigenvalue");
    for (const auto& c : chosen)
      if (c == it->z) throw UsageError("modes must be distinct");
    chosen.push_back(it->z);

    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < solver.eigenvalues().size(); ++i)
      if (std::abs(solver.eigenvalues()(i) - it->z) < std::abs(solver.eigenvalues()(best) - it->z)) best = i;
    Eigen::VectorXcd w = solver.eigenvectors().col(best);
    if (std::fabs(it->z.imag()) == 0.0) {
      // Rotate a real eigenvector's phase away.
      Eigen::Index piv;
      w.cwiseAbs().maxCoeff(&piv);
      w *= std::conj(w(piv)) / std::abs(w(piv));
      VectorXd x = w.real();
      rows.push_back(x);
      rhs.push_back(weights[m]);
      s += x;
    } else {
      VectorXd x = w.real(), y = w.imag();
      rows.push_back(x);
      rhs.push_back(0.5 * weights[m]);
      rows.push_back(y);
      rhs.push_back(0.5 * weights[m]);
      s += x + y;
    }
  }

  MatrixXd v(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) v.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(v);
  if (cod.rank() < v.rows()) throw UnsupportedStructureError("mode eigenvectors are numerically dependent");
  const VectorXd h = cod.solve(Eigen::Map<const VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size())));
  return Observable(h * s.transpose());
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::BenfordPass:
      return "BENFORD_PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Trivial:
      return "TRIVIAL";
  }
  return "FAIL";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "BENFORD_PASS") return Verdict::BenfordPass;
  if (s == "FAIL") return Verdict::Fail;
  if (s == "TRIVIAL") return Verdict::Trivial;
  throw UsageError("unknown verdict '" + s + "'");
}

BenfordReport benford_verdict(const SignalSpec& spec, Base b, const SamplingGrid& grid,
                              const VerdictThresholds& thr) {
  return std::visit(
      Overloaded{
          [&](const ObservableOnFlow& s) {
            if (s.observable.dim() != s.generator.dim()) throw UsageError("observable dimension mismatch");
            if (triviality_check(s.generator, s.observable)) {
              BenfordReport rep = report_from_samples({}, b, grid.horizon(), grid.step(), thr);
              rep.sample_count = grid.count();
              rep.excluded_sample_count = grid.count();
              rep.digit_histogram.zeros = rep.digit_histogram.total = grid.count();
              rep.notes.push_back("H(A^j) = 0 for j < d, so the signal vanishes identically");
              return rep;
            }
            auto samples = sample_flow(s.generator, grid, [&](const MatrixXd& x) { return s.observable(x); });
            return report_from_samples(samples, b, grid.horizon(), grid.step(), thr);
          },
          [&](const NormOnFlow& s) {
            auto samples = sample_flow(s.generator, grid, [&](const MatrixXd& x) { return matrix_norm(x, s.norm); });
            return report_from_samples(samples, b, grid.horizon(), grid.step(), thr);
          },
          [&](const Synthetic& s) {
            s.validate();
            ScaledSignal sig{s.r, [&s](double t) { return synthetic_scaled(s, t); }};
            return report_from_samples(sample_scaled(sig, grid), b, grid.horizon(), grid.step(), thr);
          },
      },
      spec);
}

BenfordReport benford_verdict(const ScaledSignal& signal, Base b, const SamplingGrid& grid,
                              const VerdictThresholds& thr) {
  if (!signal.scaled) throw UsageError("scaled signal has no function");
  return report_from_samples(sample_scaled(signal, grid), b, grid.horizon(), grid.step(), thr);
}

BenfordReport benford_verdict_data(std::span<const double> t, std::span<const double> values, Base b,
                                   const VerdictThresholds& thr) {
  if (t.size() != values.size()) throw UsageError("time and value columns differ in length");
  if (t.empty()) throw UsageError("no samples");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw UsageError("sample times must be strictly increasing");
  ScaledSamples s;
  s.t.assign(t.begin(), t.end());
  s.g.assign(values.begin(), values.end());
  const double horizon = t.back() - t.front();
  const double step = t.size() > 1 ? horizon / static_cast<double>(t.size() - 1) : 0.0;
  return report_from_samples(s, b, horizon, step, thr);
}

}  // namespace benflow
