#include "benflow/ud_mod1.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "benflow/errors.hpp"

namespace benflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// x = q/4 + f with integer q in [-2, 2] and |f| <= 1/8.
void reduce_quarter(double x, int& q, double& f) {
  const double r = x - std::nearbyint(x);
  const double qq = std::nearbyint(4.0 * r);
  q = static_cast<int>(qq);
  f = r - 0.25 * qq;
}

std::complex<double> phase(long double y) {
  const double r = static_cast<double>(y - std::nearbyintl(y));
  return {cos_two_pi(r), sin_two_pi(r)};
}

void require_frequency(int k) {
  if (k == 0) throw UsageError("frequency k must be nonzero");
}

}  // namespace

double cos_two_pi(double x) {
  if (!std::isfinite(x)) throw DomainError("cos_two_pi of non-finite argument");
  int q;
  double f;
  reduce_quarter(x, q, f);
  const double a = kTwoPi * f;
  switch (q) {
    case 0:
      return std::cos(a);
    case 1:
      return -std::sin(a);
    case -1:
      return std::sin(a);
    default:
      return -std::cos(a);
  }
}

double sin_two_pi(double x) {
  if (!std::isfinite(x)) throw DomainError("sin_two_pi of non-finite argument");
  int q;
  double f;
  reduce_quarter(x, q, f);
  const double a = kTwoPi * f;
  switch (q) {
    case 0:
      return std::sin(a);
    case 1:
      return std::cos(a);
    case -1:
      return -std::cos(a);
    default:
      return -std::sin(a);
  }
}

double frac(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

SamplingGrid::SamplingGrid(double horizon, double step, double offset)
    : horizon_(horizon), step_(step), offset_(offset), count_(0) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw UsageError("horizon must be positive and finite");
  if (!(step > 0.0) || !(step < horizon)) throw UsageError("step must satisfy 0 < step < horizon");
  if (!(offset >= 0.0) || !(offset < horizon)) throw UsageError("offset must lie in [0, horizon)");
  const double n = std::floor((horizon - offset) / step);
  if (n < 100.0) throw UsageError("sampling grid must hold at least 100 samples");
  count_ = static_cast<std::size_t>(n);
}

std::complex<double> weyl_sum_sequence(std::span<const double> x, int k) {
  require_frequency(k);
  if (x.empty()) throw UsageError("Weyl sum of an empty sequence");
  long double re = 0.0L, im = 0.0L;
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("Weyl sum of a non-finite value");
    auto e = phase(static_cast<long double>(k) * v);
    re += e.real();
    im += e.imag();
  }
  const auto n = static_cast<long double>(x.size());
  return {static_cast<double>(re / n), static_cast<double>(im / n)};
}

std::complex<double> weyl_average_function(std::span<const double> samples, int k) {
  return weyl_sum_sequence(samples, k);
}

double WeylReport::max_magnitude() const {
  return magnitudes.empty() ? 0.0 : *std::max_element(magnitudes.begin(), magnitudes.end());
}

double WeylReport::threshold(double multiplier) const {
  return count == 0 ? 0.0 : multiplier / std::sqrt(static_cast<double>(count));
}

WeylReport cud_report(std::span<const double> samples, int max_frequency) {
  if (max_frequency < 1) throw UsageError("maximum frequency must be >= 1");
  if (samples.size() < 100) throw UsageError("Weyl report needs at least 100 samples");
  WeylReport r;
  r.max_frequency = max_frequency;
  r.count = samples.size();
  // One pass: the k-th phase is the k-th power of the first.
  const auto kmax = static_cast<std::size_t>(max_frequency);
  std::vector<long double> re(kmax, 0.0L), im(kmax, 0.0L);
  for (double v : samples) {
    if (!std::isfinite(v)) throw DomainError("Weyl sum of a non-finite value");
    const std::complex<double> e1 = phase(static_cast<long double>(v));
    std::complex<double> e = e1;
    for (std::size_t k = 0; k < kmax; ++k) {
      re[k] += e.real();
      im[k] += e.imag();
      e *= e1;
    }
  }
  const auto n = static_cast<long double>(samples.size());
  for (std::size_t k = 0; k < kmax; ++k) {
    const std::complex<double> s{static_cast<double>(re[k] / n), static_cast<double>(im[k] / n)};
    r.magnitudes.push_back(std::min(1.0, std::abs(s)));
  }
  return r;
}

double mod1_distance(std::span<const double> x) {
  if (x.empty()) throw UsageError("distance of an empty sample");
  std::vector<double> u;
  u.reserve(x.size());
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("non-finite sample");
    u.push_back(frac(v));
  }
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, static_cast<double>(i + 1) / n - u[i]);
    d = std::max(d, u[i] - static_cast<double>(i) / n);
  }
  return d;
}

bool DeltaSamplingReport::any_flagged() const {
  return std::any_of(samples.begin(), samples.end(), [](const DeltaSample& s) { return s.flagged; });
}

std::vector<double> default_deltas(double delta0) {
  if (!(delta0 > 0.0)) throw UsageError("delta0 must be positive");
  return {delta0 / std::sqrt(2.0), delta0 / std::sqrt(3.0), delta0 / std::sqrt(5.0)};
}

DeltaSamplingReport delta_sampling_check(const std::function<double(double)>& f, std::span<const double> deltas,
                                         int k, double horizon, double tolerance, double continuous_step) {
  require_frequency(k);
  if (deltas.empty()) throw UsageError("delta list is empty");
  if (!(tolerance > 0.0)) throw UsageError("tolerance must be positive");
  SamplingGrid fine(horizon, continuous_step);

  DeltaSamplingReport rep;
  rep.frequency = k;
  rep.horizon = horizon;
  rep.tolerance = tolerance;

  std::vector<double> values(fine.count());
  for (std::size_t n = 0; n < values.size(); ++n) values[n] = f(fine.time(n) + 0.5 * continuous_step);
  rep.continuous = weyl_average_function(values, k);

  for (double delta : deltas) {
    if (!(delta > 0.0) || !std::isfinite(delta)) throw UsageError("every delta must be positive");
    SamplingGrid g(horizon, delta);
    DeltaSample s;
    s.delta = delta;
    s.count = g.count();
    std::vector<double> seq(g.count());
    for (std::size_t n = 0; n < seq.size(); ++n) seq[n] = f(g.time(n));
    s.value = weyl_sum_sequence(seq, k);
    s.flagged = std::abs(s.value - rep.continuous) > tolerance;
    rep.samples.push_back(s);
  }
  return rep;
}

void TorusMapSpec::validate() const {
  if (p.empty()) throw UsageError("torus map needs dimension >= 1");
  if (u.size() != p.size()) throw UsageError("torus map weights and exponents differ in length");
  if (!(alpha != 0.0) || !std::isfinite(alpha)) throw UsageError("torus map alpha must be finite and nonzero");
  if (std::all_of(u.begin(), u.end(), [](double w) { return w == 0.0; }))
    throw UsageError("torus map weights u must not all vanish");
  for (double w : u)
    if (!std::isfinite(w)) throw UsageError("torus map weights must be finite");
}

double torus_map_apply(const TorusMapSpec& spec, std::span<const double> x) {
  if (x.size() != spec.p.size()) throw UsageError("point dimension does not match torus map");
  long double lin = 0.0L;
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    lin += static_cast<long double>(spec.p[j]) * x[j];
    s += spec.u[j] * cos_two_pi(x[j]);
  }
  const double a = std::fabs(s);
  const double lg = a < 1e-300 ? 0.0 : std::log(a);
  const long double y = lin + static_cast<long double>(spec.alpha) * lg;
  return static_cast<double>(y - std::floor(y));
}

namespace {

std::size_t checked_total(std::size_t grid_n, int d) {
  if (d > 3) throw UsageError("grid quadrature supports d <= 3; use Monte Carlo sampling for larger d");
  double total = std::pow(static_cast<double>(grid_n), d);
  if (total < 1000.0) throw UsageError("quadrature grid must hold at least 1000 nodes");
  if (total > 1e9) throw UsageError("quadrature grid exceeds 1e9 nodes");
  return static_cast<std::size_t>(total);
}

}  // namespace

FourierEstimate pushforward_fourier(const TorusMapSpec& spec, int k, std::size_t grid_n) {
  spec.validate();
  const int d = spec.dim();
  FourierEstimate est;
  est.per_axis = grid_n;
  est.points = checked_total(grid_n, d);
  if (k == 0) {
    est.value = 1.0;
    return est;
  }
  const double h = 1.0 / static_cast<double>(grid_n);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> x(static_cast<std::size_t>(d));
  long double re = 0.0L, im = 0.0L;
  for (std::size_t n = 0; n < est.points; ++n) {
    for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = (static_cast<double>(idx[j]) + 0.5) * h;
    auto e = phase(static_cast<long double>(k) * torus_map_apply(spec, x));
    re += e.real();
    im += e.imag();
    for (int j = 0; j < d; ++j) {
      if (++idx[static_cast<std::size_t>(j)] < grid_n) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }
  const auto total = static_cast<long double>(est.points);
  est.value = {static_cast<double>(re / total), static_cast<double>(im / total)};
  return est;
}

FourierEstimate pushforward_fourier(const std::function<double(double)>& map, int k, std::size_t grid_n) {
  FourierEstimate est;
  est.per_axis = grid_n;
  est.points = checked_total(grid_n, 1);
  if (k == 0) {
    est.value = 1.0;
    return est;
  }
  const double h = 1.0 / static_cast<double>(grid_n);
  long double re = 0.0L, im = 0.0L;
  for (std::size_t n = 0; n < grid_n; ++n) {
    auto e = phase(static_cast<long double>(k) * map((static_cast<double>(n) + 0.5) * h));
    re += e.real();
    im += e.imag();
  }
  const auto total = static_cast<long double>(grid_n);
  est.value = {static_cast<double>(re / total), static_cast<double>(im / total)};
  return est;
}

std::vector<std::size_t> pushforward_histogram(const TorusMapSpec& spec, std::size_t grid_n, std::size_t bins) {
  spec.validate();
  if (bins == 0) throw UsageError("histogram needs at least one bin");
  const int d = spec.dim();
  const std::size_t total = checked_total(grid_n, d);
  const double h = 1.0 / static_cast<double>(grid_n);
  std::vector<std::size_t> counts(bins, 0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> x(static_cast<std::size_t>(d));
  for (std::size_t n = 0; n < total; ++n) {
    for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = (static_cast<double>(idx[j]) + 0.5) * h;
    const double y = torus_map_apply(spec, x);
    counts[std::min(bins - 1, static_cast<std::size_t>(y * static_cast<double>(bins)))]++;
    for (int j = 0; j < d; ++j) {
      if (++idx[static_cast<std::size_t>(j)] < grid_n) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }
  return counts;
}

}  // namespace benflow
