#pragma once

// Uniform distribution modulo one: Weyl sums, the delta-sampling check and
// torus maps P_u with pushforward Fourier coefficients.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace benflow {

// cos(2 pi x) and sin(2 pi x) with exact reduction to an octant, so that
// quarter-period arguments give exact zeros.
double cos_two_pi(double x);
double sin_two_pi(double x);

// Fractional part <x> in [0, 1).
double frac(double x);

// Uniform sample times offset + n * step, n = 0 .. count() - 1, covering
// [offset, horizon).
class SamplingGrid {
 public:
  SamplingGrid(double horizon, double step, double offset = 0.0);

  double horizon() const noexcept { return horizon_; }
  double step() const noexcept { return step_; }
  double offset() const noexcept { return offset_; }
  std::size_t count() const noexcept { return count_; }
  double time(std::size_t n) const noexcept { return offset_ + static_cast<double>(n) * step_; }

 private:
  double horizon_, step_, offset_;
  std::size_t count_;
};

// (1/N) sum exp(2 pi i k x_n).
std::complex<double> weyl_sum_sequence(std::span<const double> x, int k);

// Riemann-sum estimate of (1/T) int_0^T exp(2 pi i k f(t)) dt from samples
// of f on a uniform grid.
std::complex<double> weyl_average_function(std::span<const double> samples, int k);

struct WeylReport {
  std::vector<double> magnitudes;  // magnitudes[k - 1] for k = 1..K
  int max_frequency = 0;
  std::size_t count = 0;

  double magnitude(int k) const { return magnitudes.at(static_cast<std::size_t>(k - 1)); }
  double max_magnitude() const;
  // Noise floor multiplier / sqrt(N).
  double threshold(double multiplier = 3.0) const;
  bool pass(double multiplier = 3.0) const { return max_magnitude() < threshold(multiplier); }
};

WeylReport cud_report(std::span<const double> samples, int max_frequency = 5);

// Kolmogorov distance between the empirical law of <x_n> and Lebesgue
// measure on [0, 1).
double mod1_distance(std::span<const double> x);

struct DeltaSample {
  double delta = 0.0;
  std::size_t count = 0;
  std::complex<double> value;
  bool flagged = false;  // disagrees with the continuous estimate
};

struct DeltaSamplingReport {
  int frequency = 1;
  double horizon = 0.0;
  double tolerance = 0.0;
  std::complex<double> continuous;
  std::vector<DeltaSample> samples;

  bool any_flagged() const;
};

// delta_0 * {1/sqrt 2, 1/sqrt 3, 1/sqrt 5}.
std::vector<double> default_deltas(double delta0 = 0.6180339887498949);

// Compares the discrete sums (1/N) sum exp(2 pi i k f(n delta)) for each
// delta against a midpoint estimate of the continuous average over [0, T].
DeltaSamplingReport delta_sampling_check(const std::function<double(double)>& f, std::span<const double> deltas,
                                         int k, double horizon, double tolerance = 0.02,
                                         double continuous_step = 1e-2);

// x -> <p . x + alpha ln|sum u_j cos(2 pi x_j)|>, with ln 0 := 0.
struct TorusMapSpec {
  std::vector<long> p;
  double alpha = 1.0;
  std::vector<double> u;

  int dim() const noexcept { return static_cast<int>(p.size()); }
  void validate() const;
};

double torus_map_apply(const TorusMapSpec& spec, std::span<const double> x);

struct FourierEstimate {
  std::complex<double> value;
  std::size_t points = 0;   // quadrature nodes used
  std::size_t per_axis = 0;
};

// Midpoint-rule estimate of int exp(2 pi i k P_u(x)) dx over [0,1)^d with
// grid_n nodes per axis. Requires d <= 3 and grid_n^d >= 1000.
FourierEstimate pushforward_fourier(const TorusMapSpec& spec, int k, std::size_t grid_n);

// Same for an arbitrary map of the circle.
FourierEstimate pushforward_fourier(const std::function<double(double)>& map, int k, std::size_t grid_n);

// Counts of map values over `bins` equal bins of [0, 1), midpoint grid.
std::vector<std::size_t> pushforward_histogram(const TorusMapSpec& spec, std::size_t grid_n, std::size_t bins);

}  // namespace benflow
