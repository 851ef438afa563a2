#include "benflow/significand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "benflow/errors.hpp"

namespace benflow {

namespace {

void require_finite(double x, const char* op) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(op) + ": non-finite input");
  }
}

}  // namespace

Base::Base(int b) : b_(b), ln_b_(0.0) {
  if (b < 2) {
    throw UsageError("base must be an integer >= 2, got " + std::to_string(b));
  }
  ln_b_ = std::log(static_cast<double>(b));
}

double DigitHistogram::frequency(int digit) const {
  if (total == 0 || digit < 1 || digit >= base.value()) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(digit - 1)]) /
         static_cast<double>(total);
}

double DigitHistogram::nonzero_frequency(int digit) const {
  const std::size_t nonzero = total - zeros;
  if (nonzero == 0 || digit < 1 || digit >= base.value()) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(digit - 1)]) /
         static_cast<double>(nonzero);
}

double significand(double x, Base base) {
  require_finite(x, "significand");
  if (x == 0.0) return 0.0;

  const int b = base.value();
  const double bd = static_cast<double>(b);
  int e2 = 0;
  std::frexp(std::fabs(x), &e2);  // |x| in [2^(e2-1), 2^e2)

  // Exponent estimate from the binary exponent; off by at most one, fixed
  // up below. The division runs in extended precision so that the final
  // rounding to double is the only rounding that matters.
  const long double log_b_lower =
      static_cast<long double>(e2 - 1) * std::log(2.0L) / std::log(static_cast<long double>(b));
  const int k = static_cast<int>(std::floor(log_b_lower));
  long double s = std::fabs(static_cast<long double>(x));
  if (k > 0) {
    s /= std::pow(static_cast<long double>(b), k);
  } else if (k < 0) {
    s *= std::pow(static_cast<long double>(b), -k);
  }
  while (s >= static_cast<long double>(b)) s /= b;
  while (s < 1.0L) s *= b;

  double out = static_cast<double>(s);
  if (out >= bd) out = std::nextafter(bd, 0.0);
  return out;
}

double significand_from_log(double log_b_abs, Base base) {
  require_finite(log_b_abs, "significand_from_log");
  const double frac = log_b_abs - std::floor(log_b_abs);
  double s = std::exp(frac * base.ln());
  const double bd = static_cast<double>(base.value());
  if (s < 1.0) s = 1.0;
  if (s >= bd) s = std::nextafter(bd, 0.0);
  return s;
}

int first_digit(double x, Base base) {
  return static_cast<int>(std::floor(significand(x, base)));
}

double benford_cdf(double s, Base base) {
  if (!(s >= 1.0 && s < static_cast<double>(base.value()))) {
    throw DomainError("benford_cdf: s must lie in [1, b), got " + std::to_string(s));
  }
  return std::log(s) / base.ln();
}

std::vector<double> digit_law_pmf(Base base) {
  std::vector<double> pmf;
  pmf.reserve(static_cast<std::size_t>(base.value() - 1));
  for (int l = 1; l < base.value(); ++l) {
    pmf.push_back(std::log1p(1.0 / l) / base.ln());
  }
  return pmf;
}

SignificandECDF::SignificandECDF(std::span<const double> samples, Base base) : base_(base) {
  sorted_.reserve(samples.size());
  for (double x : samples) {
    const double s = significand(x, base);
    if (s == 0.0) {
      ++zeros_;
    } else {
      sorted_.push_back(s);
    }
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double SignificandECDF::operator()(double s) const {
  if (sorted_.empty()) return 0.0;
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), s);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double empirical_distance(std::span<const double> samples, Base base) {
  if (samples.empty()) {
    throw UsageError("empirical_distance: empty sample set");
  }
  const SignificandECDF ecdf(samples, base);
  const auto& s = ecdf.sorted();
  if (s.empty()) {
    throw UsageError("empirical_distance: all samples are zero");
  }
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = std::log(s[i]) / base.ln();
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

DigitHistogram digit_frequencies(std::span<const double> samples, Base base) {
  DigitHistogram h;
  h.base = base;
  h.counts.assign(static_cast<std::size_t>(base.value() - 1), 0);
  for (double x : samples) {
    const int digit = first_digit(x, base);
    if (digit == 0) {
      ++h.zeros;
    } else {
      ++h.counts[static_cast<std::size_t>(digit - 1)];
    }
    ++h.total;
  }
  return h;
}

}  // namespace benflow
