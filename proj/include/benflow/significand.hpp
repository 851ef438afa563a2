#pragma once

// Base-b significands, first digits and the logarithmic digit law.

#include <cstddef>
#include <span>
#include <vector>

namespace benflow {

// Integer base b >= 2.
class Base {
 public:
  explicit Base(int b);

  int value() const noexcept { return b_; }
  double ln() const noexcept { return ln_b_; }

  friend bool operator==(const Base&, const Base&) = default;

 private:
  int b_;
  double ln_b_;
};

// Leading-digit counts. counts[l - 1] holds the number of samples whose first
// digit is l, for l = 1..b-1. Exact zeros are tallied separately.
struct DigitHistogram {
  Base base{10};
  std::vector<std::size_t> counts;
  std::size_t zeros = 0;
  std::size_t total = 0;

  // Relative frequency of digit l among all samples (zeros included in the
  // denominator). Returns 0 when total == 0.
  double frequency(int digit) const;
  // Relative frequency of digit l among nonzero samples.
  double nonzero_frequency(int digit) const;
};

// Sorted significands of the nonzero samples of a data set.
class SignificandECDF {
 public:
  SignificandECDF(std::span<const double> samples, Base base);

  const Base& base() const noexcept { return base_; }
  const std::vector<double>& sorted() const noexcept { return sorted_; }
  std::size_t zeros() const noexcept { return zeros_; }

  // Fraction of nonzero samples with significand <= s.
  double operator()(double s) const;

 private:
  Base base_;
  std::vector<double> sorted_;
  std::size_t zeros_ = 0;
};

// S_b(x): the unique S in [1, b) with |x| = S * b^k, and 0 for x = 0.
// Throws DomainError for non-finite x.
double significand(double x, Base base);

// Significand of the number whose base-b logarithm of |x| is log_b_abs, i.e.
// b^<log_b_abs>. Lets callers work with magnitudes far outside double range.
double significand_from_log(double log_b_abs, Base base);

// floor(S_b(x)); 0 for x = 0.
int first_digit(double x, Base base);

// log_b s for s in [1, b).
double benford_cdf(double s, Base base);

// Entry l - 1 is log_b(1 + 1/l), l = 1..b-1.
std::vector<double> digit_law_pmf(Base base);

// sup_s |ECDF(s) - log_b s| over the significands of the nonzero samples.
// Throws UsageError if there is no nonzero sample.
double empirical_distance(std::span<const double> samples, Base base);

DigitHistogram digit_frequencies(std::span<const double> samples, Base base);

}  // namespace benflow
