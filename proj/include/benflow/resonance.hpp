#pragma once

// Exact (b-)resonance decisions over a declared symbol basis and an advisory
// floating-point integer-relation scan.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "benflow/exact.hpp"
#include "benflow/significand.hpp"

namespace benflow {

// Rational coefficients c with target = sum c_i generators_i, or nullopt.
// An empty generator list spans {0}.
std::optional<std::vector<mpq_class>> span_membership(const ExactReal& target,
                                                      std::span<const ExactReal> generators);

// A point of Z in polar form: log_b |z| and arg z / (2 pi), both exact.
struct PolarElement {
  ExactReal log_modulus;
  ExactReal arg_turns;
  bool origin = false;

  static PolarElement zero(const BasisPtr& basis) { return {ExactReal(basis), ExactReal(basis), true}; }
};

// {1 + (arg z - arg w)/(2 pi) : z, w in Z}, without duplicates.
std::vector<ExactReal> delta_set(std::span<const PolarElement> z);

enum class RelationKind {
  // q Re z = sum p_l (ln b / pi) Im w_l
  RealPartInSpan,
  // (arg z - arg w)/(2 pi) = p/q != 0
  RationalArgumentGap,
  // q log_b r = p0 + sum p_l (arg w_l - arg z)/(2 pi)
  LogModulusInSpan,
};

struct RelationWitness {
  RelationKind kind = RelationKind::RealPartInSpan;
  std::size_t target = 0;             // index of z in the input
  std::vector<std::size_t> elements;  // indices of the w_l
  mpz_class q = 1;
  mpz_class p0 = 0;
  std::vector<mpz_class> p;  // one per element

  std::string describe() const;
};

struct ResonanceVerdict {
  bool resonant = false;
  std::optional<RelationWitness> witness;
  std::string assumption;  // basis independence model used
};

// Z is b-nonresonant on every modulus shell. Shells are grouped by exact
// equality of log_b |z|; the origin is ignored.
ResonanceVerdict is_b_nonresonant(std::span<const PolarElement> z, Base b);

// Z is exponentially b-nonresonant. Z must be closed under conjugation.
// The basis must contain the symbols pi and ln b. The empty set is
// exponentially resonant, without a witness.
ResonanceVerdict is_exp_b_nonresonant(std::span<const ExactComplex> z, Base b);

// For algebraic Z: exponentially nonresonant iff no point lies on iR.
bool is_exp_nonresonant_algebraic(std::span<const std::complex<double>> z, double tol);

// Integer vector m != 0 with |m . x| small and max |m_i| <= bound, found by
// PSLQ in extended precision. n = 1 reduces to |x_0| < eps.
std::optional<std::vector<long long>> find_integer_relation(std::span<const long double> x, long long bound,
                                                            long double eps = 1e-12L);

struct IntegerRelation {
  std::complex<double> target;
  std::vector<std::complex<double>> elements;
  long long q = 1;
  std::vector<long long> p;
  double residual = 0.0;
};

// Searches q Re z = sum p_l (ln b / pi) Im w_l over groups of numerically
// equal real parts, |q|, |p_l| <= height. Advisory only.
std::optional<IntegerRelation> numeric_relation_scan(std::span<const std::complex<double>> z, Base b,
                                                     int height);

}  // namespace benflow
