#include "benflow/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <gmpxx.h>

#include "benflow/errors.hpp"

namespace benflow {

namespace {

using Eigen::MatrixXd;

void require_valid(const MatrixXd& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << "SquareMatrix: expected d x d with d >= 1, got " << m.rows() << " x " << m.cols();
    throw UsageError(os.str());
  }
  if (!m.allFinite()) {
    throw DomainError("SquareMatrix: non-finite entry");
  }
}

double one_norm(const MatrixXd& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

// Parlett-Reinsch balancing by powers of two; returns D^{-1} A D.
MatrixXd balance(MatrixXd a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  bool converged = false;
  for (int sweep = 0; !converged && sweep < 100; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::fabs(a(j, i));
        r += std::fabs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return a;
}

// Pade numerator/denominator pieces U (odd) and V (even) of degree m.
void pade_terms(const MatrixXd& a, int m, MatrixXd& u, MatrixXd& v) {
  const Eigen::Index n = a.rows();
  const MatrixXd id = MatrixXd::Identity(n, n);
  const MatrixXd a2 = a * a;
  switch (m) {
    case 3: {
      constexpr double b[] = {120.0, 60.0, 12.0, 1.0};
      u = a * (b[3] * a2 + b[1] * id);
      v = b[2] * a2 + b[0] * id;
      return;
    }
    case 5: {
      constexpr double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
      const MatrixXd a4 = a2 * a2;
      u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[4] * a4 + b[2] * a2 + b[0] * id;
      return;
    }
    case 7: {
      constexpr double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                              25200.0,    1512.0,    56.0,      1.0};
      const MatrixXd a4 = a2 * a2;
      const MatrixXd a6 = a4 * a2;
      u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      return;
    }
    case 9: {
      constexpr double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                              2162160.0,     110880.0,     3960.0,       90.0,        1.0};
      const MatrixXd a4 = a2 * a2;
      const MatrixXd a6 = a4 * a2;
      const MatrixXd a8 = a6 * a2;
      u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
      v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
      return;
    }
    default: {
      constexpr double b[] = {64764752532480000.0,
                              32382376266240000.0,
                              7771770303897600.0,
                              1187353796428800.0,
                              129060195264000.0,
                              10559470521600.0,
                              670442572800.0,
                              33522128640.0,
                              1323241920.0,
                              40840800.0,
                              960960.0,
                              16380.0,
                              182.0,
                              1.0};
      const MatrixXd a4 = a2 * a2;
      const MatrixXd a6 = a4 * a2;
      u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
               b[1] * id);
      v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
          b[0] * id;
      return;
    }
  }
}

MatrixXd expm_raw(const MatrixXd& a) {
  // Theta values bound ||A||_1 for which the degree-m approximant reaches
  // unit roundoff in double precision.
  constexpr int orders[] = {3, 5, 7, 9};
  constexpr double thetas[] = {1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
                               2.097847961257068e0};
  constexpr double theta13 = 5.371920351148152e0;

  const double norm = one_norm(a);
  MatrixXd u;
  MatrixXd v;
  for (int i = 0; i < 4; ++i) {
    if (norm <= thetas[i]) {
      pade_terms(a, orders[i], u, v);
      return (v - u).partialPivLu().solve(v + u);
    }
  }
  int squarings = 0;
  if (norm > theta13) {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
  }
  const MatrixXd scaled = a / std::ldexp(1.0, squarings);
  pade_terms(scaled, 13, u, v);
  MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

}  // namespace

SquareMatrix::SquareMatrix(Eigen::MatrixXd m) : m_(std::move(m)) { require_valid(m_); }

SquareMatrix::SquareMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto d = static_cast<Eigen::Index>(rows.size());
  m_.resize(d, d);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != d) {
      throw UsageError("SquareMatrix: ragged or non-square initializer");
    }
    Eigen::Index j = 0;
    for (double x : row) m_(i, j++) = x;
    ++i;
  }
  require_valid(m_);
}

SquareMatrix SquareMatrix::identity(int d) { return SquareMatrix(MatrixXd::Identity(d, d)); }

SquareMatrix SquareMatrix::zero(int d) { return SquareMatrix(MatrixXd::Zero(d, d)); }

std::vector<std::complex<double>> SpectrumInfo::values() const {
  std::vector<std::complex<double>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.z);
  return out;
}

std::vector<std::complex<double>> SpectrumInfo::dominant_values() const {
  std::vector<std::complex<double>> out;
  out.reserve(dominant.size());
  for (std::size_t i : dominant) out.push_back(points[i].z);
  return out;
}

SquareMatrix expm(const SquareMatrix& a, double t) {
  if (!std::isfinite(t)) throw DomainError("expm: non-finite t");
  const MatrixXd r = expm_raw(t * a.matrix());
  if (!r.allFinite()) {
    const double norm = one_norm(a.matrix());
    const double safe = norm > 0.0 ? std::log(std::numeric_limits<double>::max()) / norm
                                   : std::numeric_limits<double>::infinity();
    std::ostringstream os;
    os << "expm: e^{tA} overflows at t = " << t << " (safe for |t| <= " << safe << ")";
    throw OverflowError(os.str(), safe);
  }
  return SquareMatrix(r);
}

SquareMatrix expm_shifted(const SquareMatrix& a, double t, double shift) {
  const Eigen::Index d = a.dim();
  return expm(SquareMatrix(MatrixXd(a.matrix() - shift * MatrixXd::Identity(d, d))), t);
}

std::vector<std::complex<double>> eigenvalues(const SquareMatrix& a) {
  const MatrixXd balanced = balance(a.matrix());
  Eigen::EigenSolver<MatrixXd> solver(balanced, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalues: QR iteration did not converge");
  }
  std::vector<std::complex<double>> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  return out;
}

int numeric_rank(const MatrixXd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > threshold) ++rank;
  }
  return rank;
}

int jordan_index(const SquareMatrix& a, std::complex<double> z, double tol) {
  if (!(tol > 0.0)) throw UsageError("jordan_index: tol must be positive");
  const MatrixXd& m = a.matrix();
  const Eigen::Index d = m.rows();
  const MatrixXd id = MatrixXd::Identity(d, d);
  const double scale = std::max(1.0, one_norm(m));

  MatrixXd factor;
  double natural;
  if (std::fabs(z.imag()) <= tol * scale) {
    factor = m - z.real() * id;
    natural = scale + std::fabs(z.real());
  } else {
    factor = m * m - 2.0 * z.real() * m + std::norm(z) * id;
    natural = scale * scale + 2.0 * std::fabs(z.real()) * scale + std::norm(z);
  }

  Eigen::JacobiSVD<MatrixXd> svd(factor);
  const double sigma1 = svd.singularValues()(0);
  // The factor vanishes numerically: z (with its conjugate) is the only
  // eigenvalue and it is semisimple.
  if (sigma1 <= tol * natural) return 0;

  int previous = static_cast<int>(d);
  MatrixXd power = id;
  for (int k = 1; k <= d + 1; ++k) {
    power = power * factor;
    const int rank = numeric_rank(power, tol * std::pow(sigma1, k));
    if (rank == previous) {
      if (k == 1) {
        std::ostringstream os;
        os << "jordan_index: " << z << " is not an eigenvalue within tolerance";
        throw DomainError(os.str());
      }
      return k - 2;
    }
    previous = rank;
  }
  return static_cast<int>(d) - 1;
}

SpectrumInfo spectrum(const SquareMatrix& a, const SpectrumOptions& opts) {
  if (!(opts.cluster_tol > 0.0) || !(opts.rank_tol > 0.0)) {
    throw UsageError("spectrum: tolerances must be positive");
  }
  const auto raw = eigenvalues(a);
  const std::size_t n = raw.size();
  const double ctol = opts.cluster_tol * std::max(1.0, one_norm(a.matrix()));

  // Single-linkage clustering of the raw eigenvalues.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(raw[i] - raw[j]) <= ctol) parent[find(i)] = find(j);
    }
  }
  std::vector<SpectrumPoint> clusters;
  std::vector<std::size_t> root_to_cluster(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (root_to_cluster[root] == n) {
      root_to_cluster[root] = clusters.size();
      clusters.push_back({raw[i], 1, 0});
    } else {
      auto& c = clusters[root_to_cluster[root]];
      c.z += raw[i];
      ++c.multiplicity;
    }
  }
  for (auto& c : clusters) c.z /= static_cast<double>(c.multiplicity);

  // Conjugate closure: snap near-real points to the axis, pair the rest.
  SpectrumInfo info;
  std::vector<bool> used(clusters.size(), false);
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (used[i]) continue;
    auto c = clusters[i];
    if (std::fabs(c.z.imag()) <= ctol) {
      if (c.z.imag() != 0.0) {
        std::ostringstream os;
        os << "eigenvalue " << c.z << " treated as real (|Im z| <= " << ctol
           << "); real-branch rank condition applied";
        info.notes.push_back(os.str());
      }
      c.z = {c.z.real(), 0.0};
      used[i] = true;
      info.points.push_back(c);
      continue;
    }
    std::size_t best = clusters.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < clusters.size(); ++j) {
      if (j == i || used[j] || clusters[j].z.imag() * c.z.imag() >= 0.0) continue;
      const double gap = std::abs(clusters[j].z - std::conj(c.z));
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best == clusters.size() || clusters[best].multiplicity != c.multiplicity) {
      throw NumericalError("spectrum: computed eigenvalues are not conjugate-paired");
    }
    used[i] = used[best] = true;
    std::complex<double> upper = (c.z + std::conj(clusters[best].z)) / 2.0;
    if (upper.imag() < 0.0) upper = std::conj(upper);
    info.points.push_back({upper, c.multiplicity, 0});
    info.points.push_back({std::conj(upper), c.multiplicity, 0});
  }
  std::sort(info.points.begin(), info.points.end(), [](const auto& x, const auto& y) {
    if (x.z.real() != y.z.real()) return x.z.real() > y.z.real();
    return x.z.imag() > y.z.imag();
  });

  for (auto& p : info.points) {
    p.jordan_index = jordan_index(a, p.z, opts.rank_tol);
    if (p.jordan_index + 1 > p.multiplicity) {
      std::ostringstream os;
      os << "Jordan index at " << p.z << " clamped from " << p.jordan_index << " to multiplicity-1";
      info.notes.push_back(os.str());
      p.jordan_index = p.multiplicity - 1;
    }
  }

  // Lexicographic maximum of (Re z, k_z), real parts grouped within ctol.
  double rmax = -std::numeric_limits<double>::infinity();
  for (const auto& p : info.points) rmax = std::max(rmax, p.z.real());
  int kmax = 0;
  for (const auto& p : info.points) {
    if (p.z.real() >= rmax - ctol) kmax = std::max(kmax, p.jordan_index);
  }
  info.kmax = kmax;
  info.r = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < info.points.size(); ++i) {
    const auto& p = info.points[i];
    if (p.z.real() >= rmax - ctol && p.jordan_index == kmax) {
      info.dominant.push_back(i);
      info.r = std::max(info.r, p.z.real());
    }
  }
  return info;
}

bool is_hyperbolic(const SquareMatrix& a, double tol) {
  for (const auto& z : eigenvalues(a)) {
    if (std::fabs(z.real()) <= tol) return false;
  }
  return true;
}

bool planar_criterion(const SquareMatrix& a) {
  if (a.dim() != 2) {
    throw UsageError("planar_criterion: requires a 2 x 2 matrix");
  }
  // Every finite double is a dyadic rational, so this is exact.
  const mpq_class m00(a(0, 0)), m01(a(0, 1)), m10(a(1, 0)), m11(a(1, 1));
  const mpq_class trace = m00 + m11;
  const mpq_class det = m00 * m11 - m01 * m10;
  return sgn(trace * det) != 0 || sgn(det) < 0;
}

SquareMatrix companion_from_second_order(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("companion_from_second_order: non-finite coefficient");
  }
  return SquareMatrix{{0.0, 1.0}, {-beta, -alpha}};
}

}  // namespace benflow
