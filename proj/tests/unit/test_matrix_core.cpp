#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "benflow/errors.hpp"
#include "benflow/matrix_core.hpp"

using namespace benflow;
using Eigen::MatrixXd;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracle: Taylor series in long double after halving until the norm is small.
MatrixXd taylor_expm(const MatrixXd& a, double t) {
  using ML = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  ML x = a.cast<long double>() * static_cast<long double>(t);
  int squarings = 0;
  while (x.cwiseAbs().rowwise().sum().maxCoeff() > 0.125L) {
    x /= 2.0L;
    ++squarings;
  }
  const int d = static_cast<int>(a.rows());
  ML sum = ML::Identity(d, d);
  ML term = ML::Identity(d, d);
  for (int k = 1; k < 30; ++k) {
    term = term * x / static_cast<long double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum.cast<double>();
}

double inf_norm(const MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

MatrixXd random_matrix(std::mt19937_64& gen, int d, double norm) {
  std::normal_distribution<double> n(0.0, 1.0);
  MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = n(gen);
  return a * (norm / inf_norm(a));
}

// Largest distance under the best greedy matching of two multisets.
double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  double worst = 0.0;
  for (const auto& z : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](const auto& x, const auto& y) { return std::abs(x - z) < std::abs(y - z); });
    worst = std::max(worst, std::abs(*it - z));
    b.erase(it);
  }
  return worst;
}

bool contains(const std::vector<std::complex<double>>& v, std::complex<double> z, double tol) {
  return std::any_of(v.begin(), v.end(), [&](const auto& w) { return std::abs(w - z) <= tol; });
}

}  // namespace

TEST(SquareMatrix, RejectsBadShapes) {
  EXPECT_THROW(SquareMatrix(MatrixXd(2, 3)), UsageError);
  EXPECT_THROW(SquareMatrix(MatrixXd(0, 0)), UsageError);
  MatrixXd m = MatrixXd::Zero(2, 2);
  m(0, 1) = NAN;
  EXPECT_THROW(SquareMatrix{m}, DomainError);
}

TEST(Expm, RotationByPi) {
  const SquareMatrix a{{0.0, -kPi}, {kPi, 0.0}};
  const MatrixXd e = expm(a, 1.0).matrix();
  EXPECT_NEAR(e(0, 0), -1.0, 1e-14);
  EXPECT_NEAR(e(1, 1), -1.0, 1e-14);
  EXPECT_NEAR(e(0, 1), 0.0, 1e-14);
  EXPECT_NEAR(e(1, 0), 0.0, 1e-14);
}

TEST(Expm, RankOneClosedForm) {
  const SquareMatrix a{{1.0, 1.0}, {1.0, 1.0}};
  const MatrixXd am = a.matrix();
  for (double t : {-3.0, -0.5, 0.0, 0.7, 2.0, 9.0}) {
    const MatrixXd want = 0.5 * std::exp(2.0 * t) * am - 0.5 * (am - 2.0 * MatrixXd::Identity(2, 2));
    const MatrixXd got = expm(a, t).matrix();
    EXPECT_LE(inf_norm(got - want), 1e-13 * std::max(1.0, inf_norm(want))) << t;
  }
}

TEST(Expm, ZeroTimeIsIdentity) {
  std::mt19937_64 gen(1);
  for (int d = 1; d <= 5; ++d) {
    const SquareMatrix a(random_matrix(gen, d, 3.0));
    EXPECT_EQ(expm(a, 0.0).matrix(), MatrixXd::Identity(d, d));
  }
}

TEST(Expm, AgreesWithTaylorOracle) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> tt(-1.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 6;
    const double norm = trial < 30 ? 2.0 : 15.0;
    const MatrixXd a = random_matrix(gen, d, norm);
    const double t = tt(gen);
    const MatrixXd want = taylor_expm(a, t);
    const MatrixXd got = expm(SquareMatrix(a), t).matrix();
    EXPECT_LE(inf_norm(got - want), 1e-12 * inf_norm(want)) << trial;
  }
}

TEST(Expm, NilpotentIsPolynomial) {
  const SquareMatrix n{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}};
  const double t = 3.5;
  const MatrixXd e = expm(n, t).matrix();
  EXPECT_NEAR(e(0, 1), t, 1e-14);
  EXPECT_NEAR(e(0, 2), t * t / 2.0, 1e-13);
  EXPECT_NEAR(e(1, 2), t, 1e-14);
  EXPECT_NEAR(e(0, 0), 1.0, 1e-15);
}

TEST(Expm, OverflowNamesTime) {
  const SquareMatrix a{{1.0}};
  try {
    expm(a, 800.0);
    FAIL() << "expected overflow";
  } catch (const OverflowError& e) {
    EXPECT_NE(std::string(e.what()).find("800"), std::string::npos);
  }
}

TEST(Expm, ShiftedStaysInRange) {
  const SquareMatrix a{{2.0, 1.0}, {0.0, 2.0}};
  const MatrixXd e = expm_shifted(a, 1000.0, 2.0).matrix();
  EXPECT_NEAR(e(0, 0), 1.0, 1e-12);
  EXPECT_NEAR(e(0, 1), 1000.0, 1e-9);
}

TEST(Expm, SemigroupLaw) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 6;
    const SquareMatrix a(random_matrix(gen, d, 2.0));
    const double s = u(gen), t = u(gen);
    const MatrixXd lhs = expm(a, s + t).matrix();
    const MatrixXd rhs = expm(a, s).matrix() * expm(a, t).matrix();
    EXPECT_LT(inf_norm(lhs - rhs), 1e-10) << trial;
  }
}

TEST(Expm, SpectralMapping) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 6;
    const SquareMatrix a(random_matrix(gen, d, 2.0));
    const double delta = 0.37;
    std::vector<std::complex<double>> mapped;
    for (const auto& z : eigenvalues(a)) mapped.push_back(std::exp(delta * z));
    EXPECT_LT(multiset_distance(eigenvalues(expm(a, delta)), mapped), 1e-8) << trial;
  }
}

TEST(Spectrum, RankOne) {
  const auto s = spectrum(SquareMatrix{{1.0, 1.0}, {1.0, 1.0}});
  const auto v = s.values();
  ASSERT_EQ(v.size(), 2u);
  EXPECT_TRUE(contains(v, 0.0, 1e-12));
  EXPECT_TRUE(contains(v, 2.0, 1e-12));
  const auto dom = s.dominant_values();
  ASSERT_EQ(dom.size(), 1u);
  EXPECT_NEAR(std::abs(dom[0] - 2.0), 0.0, 1e-8);
  EXPECT_NEAR(s.r, 2.0, 1e-12);
  EXPECT_EQ(s.kmax, 0);
}

TEST(Spectrum, TimeReversedRankOne) {
  const auto s = spectrum(SquareMatrix{{-1.0, -1.0}, {-1.0, -1.0}});
  const auto dom = s.dominant_values();
  ASSERT_EQ(dom.size(), 1u);
  EXPECT_LT(std::abs(dom[0]), 1e-8);
}

TEST(Spectrum, RotationPair) {
  const double alpha = 0.3, beta = 1.7;
  const auto s = spectrum(SquareMatrix{{alpha, -beta}, {beta, alpha}});
  const auto v = s.values();
  ASSERT_EQ(v.size(), 2u);
  EXPECT_TRUE(contains(v, {alpha, beta}, 1e-12));
  EXPECT_TRUE(contains(v, {alpha, -beta}, 1e-12));
  EXPECT_EQ(s.dominant.size(), 2u);
}

TEST(Spectrum, DominantPrefersLargerJordanIndex) {
  // 1 carries a 2-block; the pair 1 +- 2i has the same real part.
  MatrixXd m = MatrixXd::Zero(4, 4);
  m(0, 0) = 1.0;
  m(0, 1) = 1.0;
  m(1, 1) = 1.0;
  m(2, 2) = 1.0;
  m(2, 3) = -2.0;
  m(3, 2) = 2.0;
  m(3, 3) = 1.0;
  const auto s = spectrum(SquareMatrix(m));
  EXPECT_EQ(s.kmax, 1);
  const auto dom = s.dominant_values();
  ASSERT_EQ(dom.size(), 1u);
  EXPECT_NEAR(std::abs(dom[0] - 1.0), 0.0, 1e-6);
}

TEST(Spectrum, Invariants) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + trial % 6;
    const SquareMatrix a(random_matrix(gen, d, 2.0));
    const auto s = spectrum(a);
    int total = 0;
    for (const auto& p : s.points) total += p.multiplicity;
    EXPECT_EQ(total, d);
    EXPECT_FALSE(s.dominant.empty());
    for (auto i : s.dominant) EXPECT_LT(i, s.points.size());
    const auto v = s.values();
    for (const auto& z : v) EXPECT_TRUE(contains(v, std::conj(z), 1e-8));
  }
}

TEST(Spectrum, SimilarityInvariance) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 4;
    const MatrixXd a = random_matrix(gen, d, 2.0);
    const MatrixXd p = MatrixXd::Identity(d, d) + random_matrix(gen, d, 0.3);
    const MatrixXd b = p * a * p.inverse();
    const auto sa = spectrum(SquareMatrix(a));
    const auto sb = spectrum(SquareMatrix(b));
    EXPECT_LT(multiset_distance(sa.values(), sb.values()), 1e-8);
    EXPECT_LT(multiset_distance(sa.dominant_values(), sb.dominant_values()), 1e-8);
  }
}

TEST(Spectrum, SimilarRotationsShareSpectrum) {
  const double w = 2.0 * kPi / std::log(10.0);
  const SquareMatrix phi{{1.0, -w}, {w, 1.0}};
  const SquareMatrix psi{{1.0, -4.0 * kPi / std::log(10.0)}, {kPi / std::log(10.0), 1.0}};
  EXPECT_LT(multiset_distance(spectrum(phi).values(), spectrum(psi).values()), 1e-8);
}

TEST(JordanIndex, Examples) {
  EXPECT_EQ(jordan_index(SquareMatrix{{0.0, 1.0}, {0.0, 0.0}}, 0.0), 1);
  EXPECT_EQ(jordan_index(SquareMatrix{{1.0, 1.0}, {1.0, 1.0}}, 2.0), 0);
  EXPECT_EQ(jordan_index(SquareMatrix{{3.0, 0.0}, {0.0, 3.0}}, 3.0), 0);
}

TEST(JordanIndex, ComplexBlocks) {
  EXPECT_EQ(jordan_index(SquareMatrix{{1.0, -2.0}, {2.0, 1.0}}, {1.0, 2.0}), 0);
  // Real Jordan block of size 2 for 1 +- 2i.
  MatrixXd m = MatrixXd::Zero(4, 4);
  m.block(0, 0, 2, 2) << 1.0, -2.0, 2.0, 1.0;
  m.block(2, 2, 2, 2) << 1.0, -2.0, 2.0, 1.0;
  m.block(0, 2, 2, 2) = MatrixXd::Identity(2, 2);
  EXPECT_EQ(jordan_index(SquareMatrix(m), {1.0, 2.0}), 1);
}

TEST(JordanIndex, LongChain) {
  MatrixXd m = MatrixXd::Zero(4, 4);
  for (int i = 0; i < 3; ++i) m(i, i + 1) = 1.0;
  m.diagonal().setConstant(-0.5);
  EXPECT_EQ(jordan_index(SquareMatrix(m), -0.5), 3);
}

TEST(JordanIndex, NotAnEigenvalue) {
  EXPECT_THROW(jordan_index(SquareMatrix{{1.0, 0.0}, {0.0, 2.0}}, 5.0), DomainError);
}

TEST(Hyperbolic, Examples) {
  EXPECT_FALSE(is_hyperbolic(SquareMatrix{{0.0, -1.0}, {1.0, 0.0}}));
  EXPECT_FALSE(is_hyperbolic(SquareMatrix{{1.0, 1.0}, {1.0, 1.0}}));
  EXPECT_TRUE(is_hyperbolic(SquareMatrix{{1.0, -kPi}, {kPi, 1.0}}));
}

TEST(PlanarCriterion, Examples) {
  EXPECT_FALSE(planar_criterion(SquareMatrix{{0.0, 1.0}, {-1.0, 0.0}}));
  EXPECT_TRUE(planar_criterion(SquareMatrix{{0.0, 1.0}, {1.0, 0.0}}));
  EXPECT_THROW(planar_criterion(SquareMatrix::identity(3)), UsageError);
}

TEST(PlanarCriterion, CompanionCharacterization) {
  const std::vector<double> vals{-3.0, -1.0, -0.5, 0.0, 0.25, 1.0, 2.0};
  for (double alpha : vals) {
    for (double beta : vals) {
      const bool want = (1.0 + alpha * alpha) * std::fabs(beta) > beta;
      EXPECT_EQ(planar_criterion(companion_from_second_order(alpha, beta)), want) << alpha << " " << beta;
    }
  }
}

TEST(Companion, Examples) {
  EXPECT_EQ(companion_from_second_order(0.0, 1.0).matrix(), SquareMatrix({{0.0, 1.0}, {-1.0, 0.0}}).matrix());
  EXPECT_EQ(companion_from_second_order(0.0, 0.0).matrix(), SquareMatrix({{0.0, 1.0}, {0.0, 0.0}}).matrix());
  EXPECT_EQ(companion_from_second_order(2.0, -3.0).matrix(), SquareMatrix({{0.0, 1.0}, {3.0, -2.0}}).matrix());
}
