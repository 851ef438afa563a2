#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "benflow/errors.hpp"
#include "benflow/genericity.hpp"
#include "benflow/matrix_core.hpp"
#include "benflow/resonance.hpp"

using namespace benflow;
using Eigen::MatrixXd;

namespace {

EnsembleSpec ensemble(int d, Distribution dist, std::uint64_t n, std::uint64_t seed, int bound = 1) {
  EnsembleSpec s;
  s.d = d;
  s.distribution = dist;
  s.integer_bound = bound;
  s.n = n;
  s.seed = seed;
  return s;
}

// Exact for integer 2x2: an eigenvalue on iR iff det = 0, or trace = 0 with det > 0.
bool integer_2x2_on_axis(int a, int b, int c, int d) {
  const int tr = a + d, det = a * d - b * c;
  return det == 0 || (tr == 0 && det > 0);
}

}  // namespace

TEST(SplitMix, KnownSequence) {
  // Reference values of the SplitMix64 generator seeded with 0.
  std::uint64_t state = 0;
  auto next = [&] {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  EXPECT_EQ(next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(splitmix64(5, 7), splitmix64(5, 7));
  EXPECT_NE(splitmix64(5, 7), splitmix64(5, 8));
  EXPECT_NE(splitmix64(5, 7), splitmix64(6, 7));
}

TEST(Ensemble, Validation) {
  EXPECT_THROW(ensemble(0, Distribution::Gaussian, 1, 0).validate(), UsageError);
  EXPECT_THROW(ensemble(2, Distribution::Gaussian, 0, 0).validate(), UsageError);
  EXPECT_THROW(ensemble(2, Distribution::Integer, 1, 0, 0).validate(), UsageError);
  EXPECT_EQ(ensemble(2, Distribution::Integer, 1, 0, 3).name(), "int3");
  EXPECT_EQ(ensemble(2, Distribution::Gaussian, 1, 0).name(), "gaussian");
  EXPECT_EQ(ensemble(2, Distribution::Uniform, 1, 0).name(), "uniform");
  EXPECT_THROW(sample_generator(ensemble(2, Distribution::Gaussian, 5, 0), 5), UsageError);
}

TEST(SampleGenerator, Deterministic) {
  const auto s = ensemble(3, Distribution::Gaussian, 10, 42);
  EXPECT_EQ(sample_generator(s, 0).matrix(), sample_generator(s, 0).matrix());
  EXPECT_NE(sample_generator(s, 0).matrix(), sample_generator(s, 1).matrix());
  EXPECT_NE(sample_generator(s, 0).matrix(), sample_generator(ensemble(3, Distribution::Gaussian, 10, 43), 0).matrix());
}

TEST(SampleGenerator, IntegerSupport) {
  const auto s = ensemble(1, Distribution::Integer, 1000, 7);
  std::set<double> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double v = sample_generator(s, i)(0, 0);
    EXPECT_TRUE(v == -1.0 || v == 0.0 || v == 1.0) << v;
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 3u);
}

TEST(SampleGenerator, UniformRange) {
  const auto s = ensemble(4, Distribution::Uniform, 200, 1);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const MatrixXd m = sample_generator(s, i).matrix();
    EXPECT_LE(m.maxCoeff(), 1.0);
    EXPECT_GE(m.minCoeff(), -1.0);
  }
}

TEST(SampleGenerator, GaussianMoments) {
  const auto s = ensemble(5, Distribution::Gaussian, 4000, 3);
  double sum = 0.0, sq = 0.0;
  std::size_t n = 0;
  for (std::uint64_t i = 0; i < 4000; ++i) {
    const MatrixXd m = sample_generator(s, i).matrix();
    sum += m.sum();
    sq += m.squaredNorm();
    n += static_cast<std::size_t>(m.size());
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(SampleGenerator, NoCollisions) {
  const auto s = ensemble(3, Distribution::Gaussian, 1000, 11);
  std::set<std::vector<double>> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const MatrixXd m = sample_generator(s, i).matrix();
    seen.insert(std::vector<double>(m.data(), m.data() + m.size()));
  }
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(DiscriminantProxy, Examples) {
  EXPECT_TRUE(discriminant_proxy(SquareMatrix{{0.0, 1.0}, {0.0, 0.0}}, 1e-8));
  EXPECT_FALSE(discriminant_proxy(SquareMatrix{{1.0, 0.0}, {0.0, 2.0}}, 1e-8));
  EXPECT_FALSE(discriminant_proxy(SquareMatrix{{1.0, 1.0}, {1.0, 1.0}}, 1e-8));
  EXPECT_TRUE(discriminant_proxy(SquareMatrix{{1.0, 0.0}, {0.0, 1.0 + 1e-10}}, 1e-8));
}

TEST(ExactMultipleEigenvalue, IntegerMatrices) {
  EXPECT_TRUE(has_multiple_eigenvalue_exact(SquareMatrix{{0.0, 1.0}, {0.0, 0.0}}));
  EXPECT_TRUE(has_multiple_eigenvalue_exact(SquareMatrix{{2.0, 0.0}, {0.0, 2.0}}));
  EXPECT_FALSE(has_multiple_eigenvalue_exact(SquareMatrix{{1.0, 1.0}, {1.0, 1.0}}));
  EXPECT_FALSE(has_multiple_eigenvalue_exact(SquareMatrix{{0.0, -1.0}, {1.0, 0.0}}));
  // (x - 1)^2 (x + 2) via a companion matrix.
  EXPECT_TRUE(has_multiple_eigenvalue_exact(SquareMatrix{{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {-2.0, 3.0, 0.0}}));
  // x^4 - 1.
  EXPECT_FALSE(has_multiple_eigenvalue_exact(
      SquareMatrix{{0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {1.0, 0.0, 0.0, 0.0}}));
  EXPECT_THROW(has_multiple_eigenvalue_exact(SquareMatrix{{0.5}}), UsageError);
  EXPECT_THROW(has_multiple_eigenvalue_exact(SquareMatrix::identity(5)), UsageError);
}

TEST(ExactMultipleEigenvalue, AgreesWithDiscriminantOn2x2) {
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          const int disc = (a - d) * (a - d) + 4 * b * c;
          const SquareMatrix m{{double(a), double(b)}, {double(c), double(d)}};
          EXPECT_EQ(has_multiple_eigenvalue_exact(m), disc == 0) << a << b << c << d;
        }
}

TEST(Census, GaussianHasNoHits) {
  const auto r = resonance_census(ensemble(4, Distribution::Gaussian, 10000, 42), Base(10), 1e-8);
  EXPECT_EQ(r.n, 10000u);
  EXPECT_EQ(r.imaginary_axis_hits, 0u);
  EXPECT_EQ(r.multiple_eigenvalue_hits, 0u);
  EXPECT_EQ(r.rng, "splitmix64");
  EXPECT_EQ(r.ensemble, "gaussian");
  EXPECT_EQ(r.d, 4);
}

TEST(Census, IntegerEnsembleHitsAxis) {
  // Oracle: fraction of the 3^4 support with an eigenvalue on iR.
  int on_axis = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        for (int d = -1; d <= 1; ++d) on_axis += integer_2x2_on_axis(a, b, c, d);
  const double p = on_axis / 81.0;
  const double n = 10000.0;
  const auto r = resonance_census(ensemble(2, Distribution::Integer, 10000, 5), Base(10), 1e-8);
  EXPECT_GT(r.imaginary_axis_hits, 0u);
  EXPECT_NEAR(static_cast<double>(r.imaginary_axis_hits), n * p, 5.0 * std::sqrt(n * p * (1.0 - p)));
  EXPECT_EQ(r.ensemble, "int1");
}

TEST(Census, SingleDraw) {
  const auto r = resonance_census(ensemble(3, Distribution::Gaussian, 1, 9), Base(10), 1e-8);
  EXPECT_LE(r.imaginary_axis_hits, 1u);
  EXPECT_LE(r.multiple_eigenvalue_hits, 1u);
  EXPECT_LE(r.relation_hits, 1u);
}

TEST(Census, Deterministic) {
  const auto s = ensemble(3, Distribution::Uniform, 2000, 77);
  const auto a = resonance_census(s, Base(10), 1e-3, 6);
  const auto b = resonance_census(s, Base(10), 1e-3, 6);
  EXPECT_EQ(a.imaginary_axis_hits, b.imaginary_axis_hits);
  EXPECT_EQ(a.multiple_eigenvalue_hits, b.multiple_eigenvalue_hits);
  EXPECT_EQ(a.relation_hits, b.relation_hits);
}

TEST(Census, MonotoneAndShrinkingInTol) {
  const auto s = ensemble(3, Distribution::Gaussian, 5000, 13);
  std::uint64_t prev_axis = ~0ULL, prev_mult = ~0ULL;
  std::vector<std::uint64_t> axis;
  for (double tol : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const auto r = resonance_census(s, Base(10), tol);
    EXPECT_LE(r.imaginary_axis_hits, prev_axis);
    EXPECT_LE(r.multiple_eigenvalue_hits, prev_mult);
    prev_axis = r.imaginary_axis_hits;
    prev_mult = r.multiple_eigenvalue_hits;
    axis.push_back(r.imaginary_axis_hits);
  }
  EXPECT_GT(axis[0], 0u);
  EXPECT_LT(axis[1], axis[0]);
  EXPECT_EQ(axis[3], 0u);
}

TEST(Census, OpenSetAroundHyperbolicDiagonal) {
  std::mt19937_64 gen(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 4;
    MatrixXd m = MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = (i % 2 ? -1.0 : 1.0) * (1.0 + i);
    MatrixXd e(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) e(i, j) = u(gen);
    // Gap between diagonal entries and distance to iR are both at least 1.
    m += e * (0.2 / e.norm());
    const auto ev = eigenvalues(SquareMatrix(m));
    EXPECT_TRUE(is_exp_nonresonant_algebraic(ev, 0.5));
  }
}
