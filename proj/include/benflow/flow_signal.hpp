#pragma once

// Signals generated by linear flows and their Benford verdicts.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "benflow/matrix_core.hpp"
#include "benflow/significand.hpp"
#include "benflow/ud_mod1.hpp"

namespace benflow {

// Linear functional H(M) = sum_{jk} c_jk M_jk.
class Observable {
 public:
  explicit Observable(Eigen::MatrixXd c);

  // H = [ . ]_{ij} (zero-based indices).
  static Observable entry(int d, int i, int j);

  const Eigen::MatrixXd& coefficients() const noexcept { return c_; }
  int dim() const noexcept { return static_cast<int>(c_.rows()); }
  double operator()(const Eigen::MatrixXd& m) const;

 private:
  Eigen::MatrixXd c_;
};

enum class NormKind { Spectral, Frobenius, Max };

double matrix_norm(const Eigen::MatrixXd& m, NormKind kind);

struct ObservableOnFlow {
  SquareMatrix generator;
  Observable observable;
};

struct NormOnFlow {
  SquareMatrix generator;
  NormKind norm = NormKind::Spectral;
};

struct Mode {
  double omega = 0.0;
  double weight = 1.0;
};

// e^{rt} t^k sum_m weight_m cos(omega_m t).
struct Synthetic {
  double r = 0.0;
  int k = 0;
  std::vector<Mode> modes;

  void validate() const;
};

using SignalSpec = std::variant<ObservableOnFlow, NormOnFlow, Synthetic>;

// f(t) = e^{rate t} g(t) with g kept in double range.
struct ScaledSignal {
  double rate = 0.0;
  std::function<double(double)> scaled;
};

double eval_signal(const SignalSpec& spec, double t);

// sqrt(2 e^{2t} + e^{2 alpha t}), alpha = ln 10 - 1/2: the Frobenius norm of
// the flow generated by three_by_three_example_generator().
double frobenius_norm_signal_3x3_example(double t);
SquareMatrix three_by_three_example_generator();

// The cubic observable h = (H1)^3 + (H2)^3 on the same flow, in closed form:
// e^{(1+2a)t} cos(pi t) (3 - 3e^{-(a-1)t} cos(pi t) + e^{-2(a-1)t} cos(pi t)^2).
ScaledSignal cubic_counterexample_signal();

// True iff |H(A^j)| <= tol * scale for j = 0..d-1, with
// scale = ||c||_F * max_j ||A^j||_F. Equivalent to H(e^{tA}) == 0 for all t.
bool triviality_check(const SquareMatrix& a, const Observable& obs, double tol = 1e-10);

// Observable with H(e^{tA}) = sum_z u_z e^{t Re z} cos(t Im z) over the given
// simple eigenvalues (one per conjugate pair, Im z >= 0).
Observable build_observable_for_modes(const SquareMatrix& a, std::span<const std::complex<double>> modes,
                                      std::span<const double> weights);

enum class Verdict { BenfordPass, Fail, Trivial };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct VerdictThresholds {
  double distance = 0.02;
  double weyl_multiplier = 3.0;
  int max_frequency = 5;
  double zero_threshold = 1e-13;  // relative to the running maximum
};

struct BenfordReport {
  Base base{10};
  double horizon = 0.0;
  double step = 0.0;
  std::size_t sample_count = 0;
  std::size_t excluded_sample_count = 0;
  double significand_distance = 0.0;
  DigitHistogram digit_histogram;
  WeylReport weyl;
  // Empirical significand CDF at s_j = b^{j/20}, j = 0..20.
  std::vector<double> significand_ecdf;
  Verdict verdict = Verdict::Fail;
  bool inconclusive = false;
  bool truncated = false;  // sampling stopped early on overflow
  double log_shift_rate = 0.0;
  std::vector<std::string> notes;
};

BenfordReport benford_verdict(const SignalSpec& spec, Base b, const SamplingGrid& grid,
                              const VerdictThresholds& thr = {});

BenfordReport benford_verdict(const ScaledSignal& signal, Base b, const SamplingGrid& grid,
                              const VerdictThresholds& thr = {});

// Verdict on externally supplied samples (t, value); t must be increasing.
BenfordReport benford_verdict_data(std::span<const double> t, std::span<const double> values, Base b,
                                   const VerdictThresholds& thr = {});

}  // namespace benflow
