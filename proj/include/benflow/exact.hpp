#pragma once

// Exact real numbers as rational combinations of monomials in a declared set
// of transcendental constants (by default pi and ln b).
//
// The basis constants are *assumed* to be algebraically independent over Q,
// so distinct monomials are Q-linearly independent and the coordinate vector
// of an ExactReal is unique. The assumption is recorded, never proven.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "benflow/significand.hpp"

namespace benflow {

struct NamedConstant {
  std::string name;
  long double value;
};

class SymbolBasis {
 public:
  // `constants` excludes the unit element, which is always element 0.
  explicit SymbolBasis(std::vector<NamedConstant> constants);

  // {1, pi, ln b} plus ln n for every n in extra_logs, plus user constants.
  static std::shared_ptr<const SymbolBasis> standard(Base b, const std::vector<int>& extra_logs = {},
                                                     const std::vector<NamedConstant>& extra = {});

  // Number of elements including the unit.
  std::size_t size() const noexcept { return elements_.size(); }
  // Element 0 is {"1", 1}.
  const std::vector<NamedConstant>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // Human-readable independence assumption for verdict provenance.
  std::string assumption() const;

  friend bool operator==(const SymbolBasis& a, const SymbolBasis& b);

 private:
  std::vector<NamedConstant> elements_;
};

using BasisPtr = std::shared_ptr<const SymbolBasis>;

// Exponents of the non-unit basis constants; all zero is the constant 1.
using Monomial = std::vector<int>;

class ExactReal {
 public:
  explicit ExactReal(BasisPtr basis);

  static ExactReal rational(BasisPtr basis, const mpq_class& q);
  // The basis element with the given name ("1", "pi", "ln10", ...).
  static ExactReal constant(BasisPtr basis, std::string_view name);
  static ExactReal monomial(BasisPtr basis, Monomial m, const mpq_class& coeff = 1);

  const BasisPtr& basis() const noexcept { return basis_; }
  const std::map<Monomial, mpq_class>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  // True iff only the constant monomial is present (zero included).
  bool is_rational() const;
  mpq_class rational_value() const;  // requires is_rational()

  // Coefficients over the basis elements; RepresentationError if a
  // higher-degree or negative-power monomial is present.
  std::vector<mpq_class> coordinates() const;

  long double value() const;
  std::string to_string() const;

  ExactReal operator-() const;
  ExactReal& operator+=(const ExactReal& o);
  ExactReal& operator-=(const ExactReal& o);
  ExactReal& operator*=(const mpq_class& q);

  friend ExactReal operator+(ExactReal a, const ExactReal& b) { return a += b; }
  friend ExactReal operator-(ExactReal a, const ExactReal& b) { return a -= b; }
  friend ExactReal operator*(ExactReal a, const mpq_class& q) { return a *= q; }
  friend ExactReal operator*(const mpq_class& q, ExactReal a) { return a *= q; }
  friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
  // Division is exact only by a single nonzero monomial term.
  friend ExactReal operator/(const ExactReal& a, const ExactReal& b);
  friend bool operator==(const ExactReal& a, const ExactReal& b);

 private:
  void require_same_basis(const ExactReal& o) const;
  void prune();

  BasisPtr basis_;
  std::map<Monomial, mpq_class> terms_;
};

struct ExactComplex {
  ExactReal re;
  ExactReal im;

  ExactComplex conj() const { return {re, -im}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// Parses expressions such as "1", "-3/2", "2*pi/ln10", "pi^2 - 1/lnb",
// "0.25". Identifiers resolve against the basis; "lnb" is an alias for the
// logarithm of `base` when given. Throws RepresentationError on unknown
// symbols or inexact operations and UsageError on syntax errors.
ExactReal parse_exact(std::string_view text, const BasisPtr& basis,
                      std::optional<Base> base = std::nullopt);

}  // namespace benflow
