#pragma once

// Monte Carlo census of resonance-related events over random generators.

#include <cstdint>
#include <string>

#include "benflow/matrix_core.hpp"
#include "benflow/significand.hpp"

namespace benflow {

enum class Distribution { Gaussian, Uniform, Integer };

std::string to_string(Distribution d);

struct EnsembleSpec {
  int d = 2;
  Distribution distribution = Distribution::Gaussian;
  int integer_bound = 1;  // m for integer(-m..m)
  std::uint64_t n = 1;
  std::uint64_t seed = 0;

  void validate() const;
  std::string name() const;  // "gaussian", "uniform", "int<m>"
};

// SplitMix64 output for counter value `counter` under `key`.
std::uint64_t splitmix64(std::uint64_t key, std::uint64_t counter);

inline constexpr const char* kRngAlgorithm = "splitmix64";

// Deterministic in (seed, index); entries i.i.d. per the distribution.
SquareMatrix sample_generator(const EnsembleSpec& spec, std::uint64_t index);

// True iff two computed eigenvalues lie within tol of each other.
bool discriminant_proxy(const SquareMatrix& a, double tol);

// Exact test for a repeated root of the characteristic polynomial of an
// integer matrix with d <= 4, via gcd(p, p').
bool has_multiple_eigenvalue_exact(const SquareMatrix& a);

struct CensusReport {
  std::uint64_t n = 0;
  std::uint64_t imaginary_axis_hits = 0;
  std::uint64_t multiple_eigenvalue_hits = 0;
  std::uint64_t relation_hits = 0;
  double tol = 0.0;
  int height = 8;
  int base = 10;
  std::uint64_t seed = 0;
  int d = 0;
  std::string ensemble;
  std::string rng = kRngAlgorithm;
};

CensusReport resonance_census(const EnsembleSpec& spec, Base b, double tol, int height = 8);

}  // namespace benflow
