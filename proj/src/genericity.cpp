#include "benflow/genericity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <gmpxx.h>

#include "benflow/errors.hpp"
#include "benflow/resonance.hpp"

namespace benflow {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t next() { return splitmix64(key_, counter_++); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

using Poly = std::vector<mpq_class>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mod(Poly a, const Poly& b) {
  while (a.size() >= b.size()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
    if (a.empty()) break;
  }
  return a;
}

}  // namespace

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::Gaussian:
      return "gaussian";
    case Distribution::Uniform:
      return "uniform";
    case Distribution::Integer:
      return "integer";
  }
  return "gaussian";
}

void EnsembleSpec::validate() const {
  if (d < 1) throw UsageError("ensemble dimension must be >= 1");
  if (n < 1) throw UsageError("ensemble sample count must be >= 1");
  if (distribution == Distribution::Integer && integer_bound < 1)
    throw UsageError("integer ensemble bound must be >= 1");
}

std::string EnsembleSpec::name() const {
  if (distribution == Distribution::Integer) return "int" + std::to_string(integer_bound);
  return to_string(distribution);
}

std::uint64_t splitmix64(std::uint64_t key, std::uint64_t counter) { return mix(key + (counter + 1) * kGolden); }

SquareMatrix sample_generator(const EnsembleSpec& spec, std::uint64_t index) {
  spec.validate();
  if (index >= spec.n) throw UsageError("sample index out of range");
  Stream rng(mix(spec.seed ^ mix(index + kGolden)));
  Eigen::MatrixXd m(spec.d, spec.d);
  const Eigen::Index total = m.size();
  switch (spec.distribution) {
    case Distribution::Gaussian:
      for (Eigen::Index i = 0; i < total; i += 2) {
        const double u1 = 1.0 - rng.unit();
        const double u2 = rng.unit();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        m(i) = rad * std::cos(2.0 * std::numbers::pi * u2);
        if (i + 1 < total) m(i + 1) = rad * std::sin(2.0 * std::numbers::pi * u2);
      }
      break;
    case Distribution::Uniform:
      for (Eigen::Index i = 0; i < total; ++i) m(i) = 2.0 * rng.unit() - 1.0;
      break;
    case Distribution::Integer: {
      const std::uint64_t range = 2 * static_cast<std::uint64_t>(spec.integer_bound) + 1;
      const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
      for (Eigen::Index i = 0; i < total; ++i) {
        std::uint64_t x;
        do x = rng.next();
        while (x >= limit);
        m(i) = static_cast<double>(static_cast<std::int64_t>(x % range) - spec.integer_bound);
      }
      break;
    }
  }
  return SquareMatrix(std::move(m));
}

bool discriminant_proxy(const SquareMatrix& a, double tol) {
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  const auto ev = eigenvalues(a);
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(ev[i] - ev[j]) <= tol) return true;
  return false;
}

bool has_multiple_eigenvalue_exact(const SquareMatrix& a) {
  const int d = a.dim();
  if (d > 4) throw UsageError("exact discriminant test supports d <= 4");
  std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double v = a(i, j);
      if (v != std::nearbyint(v) || std::fabs(v) > 0x1p52) throw UsageError("exact discriminant test needs integer entries");
      m[i][j] = mpq_class(static_cast<long>(v));
    }
  }
  // Faddeev-LeVerrier: p(x) = sum c_k x^k with c_d = 1.
  Poly c(static_cast<std::size_t>(d) + 1, 0);
  c[d] = 1;
  std::vector<std::vector<mpq_class>> mk(d, std::vector<mpq_class>(d, 0));
  for (int k = 1; k <= d; ++k) {
    std::vector<std::vector<mpq_class>> next(d, std::vector<mpq_class>(d, 0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        for (int l = 0; l < d; ++l) next[i][j] += m[i][l] * mk[l][j];
        if (i == j) next[i][j] += c[d - k + 1];
      }
    mk = std::move(next);
    mpq_class tr = 0;
    for (int i = 0; i < d; ++i)
      for (int l = 0; l < d; ++l) tr += m[i][l] * mk[l][i];
    c[d - k] = -tr / k;
  }
  Poly dp;
  for (int k = 1; k <= d; ++k) dp.push_back(c[k] * k);
  trim(dp);
  Poly x = c, y = dp;
  trim(x);
  while (!y.empty()) {
    Poly r = poly_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.size() >= 2;
}

CensusReport resonance_census(const EnsembleSpec& spec, Base b, double tol, int height) {
  spec.validate();
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  CensusReport rep;
  rep.n = spec.n;
  rep.tol = tol;
  rep.height = height;
  rep.base = b.value();
  rep.seed = spec.seed;
  rep.d = spec.d;
  rep.ensemble = spec.name();
  for (std::uint64_t i = 0; i < spec.n; ++i) {
    const SquareMatrix a = sample_generator(spec, i);
    const auto ev = eigenvalues(a);
    if (std::any_of(ev.begin(), ev.end(), [&](const auto& z) { return std::fabs(z.real()) <= tol; }))
      ++rep.imaginary_axis_hits;
    bool multiple = false;
    for (std::size_t p = 0; p < ev.size() && !multiple; ++p)
      for (std::size_t q = 0; q < p && !multiple; ++q) multiple = std::abs(ev[p] - ev[q]) <= tol;
    if (multiple) ++rep.multiple_eigenvalue_hits;
    if (numeric_relation_scan(ev, b, height)) ++rep.relation_hits;
  }
  return rep;
}

}  // namespace benflow
