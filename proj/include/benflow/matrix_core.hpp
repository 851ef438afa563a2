#pragma once

// Dense real square matrices: exponential, spectrum with Jordan indices,
// dominant spectrum and hyperbolicity tests.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace benflow {

// d x d matrix of finite reals, d >= 1.
class SquareMatrix {
 public:
  explicit SquareMatrix(Eigen::MatrixXd m);
  SquareMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SquareMatrix identity(int d);
  static SquareMatrix zero(int d);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }

  SquareMatrix operator-() const { return SquareMatrix(Eigen::MatrixXd(-m_)); }

 private:
  Eigen::MatrixXd m_;
};

struct SpectrumPoint {
  std::complex<double> z;
  int multiplicity = 1;  // algebraic multiplicity
  int jordan_index = 0;  // k_z: largest Jordan block size minus one
};

struct SpectrumInfo {
  std::vector<SpectrumPoint> points;  // distinct eigenvalues, Re descending
  double r = 0.0;                     // r_A
  int kmax = 0;                       // k_A
  std::vector<std::size_t> dominant;  // indices into points
  std::vector<std::string> notes;

  std::vector<std::complex<double>> values() const;
  std::vector<std::complex<double>> dominant_values() const;
};

struct SpectrumOptions {
  // Eigenvalues closer than cluster_tol * max(1, ||A||) are merged; the same
  // threshold groups real parts when selecting the dominant spectrum.
  double cluster_tol = 1e-8;
  // Singular values below rank_tol * sigma_max count as zero.
  double rank_tol = 1e-10;
};

// e^{tA} by scaling and squaring with diagonal Pade approximants (orders
// 3, 5, 7, 9, 13). Throws OverflowError naming t when the result is not
// representable.
SquareMatrix expm(const SquareMatrix& a, double t);

// e^{t(A - shift I)} = e^{-t shift} e^{tA}; keeps long-horizon flows in range.
SquareMatrix expm_shifted(const SquareMatrix& a, double t, double shift);

// Raw eigenvalues (with repetition) of the balanced matrix.
std::vector<std::complex<double>> eigenvalues(const SquareMatrix& a);

// Numerical rank: number of singular values above threshold.
int numeric_rank(const Eigen::MatrixXd& m, double threshold);

SpectrumInfo spectrum(const SquareMatrix& a, const SpectrumOptions& opts = {});

// k_z from rank drops of (A - zI)^k (real z) or of the real quadratic factor
// (A^2 - 2 Re z A + |z|^2 I)^k (non-real z). z counts as real when
// |Im z| <= tol * max(1, ||A||). Throws DomainError if z is not an eigenvalue.
int jordan_index(const SquareMatrix& a, std::complex<double> z, double tol = 1e-10);

// True iff every eigenvalue has |Re z| > tol.
bool is_hyperbolic(const SquareMatrix& a, double tol = 1e-9);

// trace(A) det(A) != 0 or det(A) < 0, evaluated exactly on the binary values
// of the entries. Requires d = 2.
bool planar_criterion(const SquareMatrix& a);

// Generator [[0, 1], [-beta, -alpha]] of y'' + alpha y' + beta y = 0.
SquareMatrix companion_from_second_order(double alpha, double beta);

}  // namespace benflow
