#include "benflow/exact.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "benflow/errors.hpp"

namespace benflow {

namespace {

// ln n_1, ..., ln n_k are Q-linearly independent iff the prime exponent
// vectors of the n_i are.
bool logs_independent(const std::vector<int>& args) {
  std::vector<std::map<long, long>> vecs;
  for (int n : args) {
    std::map<long, long> f;
    long m = n;
    for (long p = 2; p * p <= m; ++p)
      while (m % p == 0) {
        ++f[p];
        m /= p;
      }
    if (m > 1) ++f[m];
    vecs.push_back(std::move(f));
  }
  std::map<long, std::size_t> col;
  for (const auto& f : vecs)
    for (const auto& [p, e] : f) col.emplace(p, col.size());
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& f : vecs) {
    std::vector<mpq_class> r(col.size(), 0);
    for (const auto& [p, e] : f) r[col[p]] = e;
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < col.size() && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c] / rows[rank][c];
      for (std::size_t k = c; k < col.size(); ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank == rows.size();
}

}  // namespace

SymbolBasis::SymbolBasis(std::vector<NamedConstant> constants) {
  elements_.push_back({"1", 1.0L});
  for (auto& c : constants) {
    if (c.name.empty() || c.name == "1") throw UsageError("invalid basis symbol name '" + c.name + "'");
    if (!std::isfinite(c.value) || c.value == 0.0L)
      throw UsageError("basis symbol '" + c.name + "' needs a finite nonzero value");
    if (index_of(c.name)) throw UsageError("duplicate basis symbol '" + c.name + "'");
    elements_.push_back(std::move(c));
  }
}

BasisPtr SymbolBasis::standard(Base b, const std::vector<int>& extra_logs,
                               const std::vector<NamedConstant>& extra) {
  std::vector<NamedConstant> c;
  c.push_back({"pi", std::numbers::pi_v<long double>});
  auto add_log = [&](int n) {
    if (n < 2) throw UsageError("logarithm symbols need an integer argument >= 2");
    std::string name = "ln" + std::to_string(n);
    for (const auto& e : c)
      if (e.name == name) return;
    c.push_back({name, std::log(static_cast<long double>(n))});
  };
  add_log(b.value());
  for (int n : extra_logs) add_log(n);
  std::vector<int> args;
  for (const auto& e : c)
    if (e.name.size() > 2 && e.name.rfind("ln", 0) == 0 &&
        e.name.find_first_not_of("0123456789", 2) == std::string::npos)
      args.push_back(std::stoi(e.name.substr(2)));
  if (!logs_independent(args))
    throw UsageError("logarithm symbols of multiplicatively dependent integers cannot share a basis");
  for (const auto& e : extra) c.push_back(e);
  return std::make_shared<const SymbolBasis>(std::move(c));
}

std::optional<std::size_t> SymbolBasis::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].name == name) return i;
  return std::nullopt;
}

std::string SymbolBasis::assumption() const {
  std::string s;
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    if (!s.empty()) s += ", ";
    s += elements_[i].name;
  }
  if (s.empty()) return "rational arithmetic only";
  return "assumed algebraically independent over Q: " + s;
}

bool operator==(const SymbolBasis& a, const SymbolBasis& b) {
  if (a.elements_.size() != b.elements_.size()) return false;
  for (std::size_t i = 0; i < a.elements_.size(); ++i)
    if (a.elements_[i].name != b.elements_[i].name) return false;
  return true;
}

ExactReal::ExactReal(BasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw UsageError("ExactReal needs a symbol basis");
}

ExactReal ExactReal::rational(BasisPtr basis, const mpq_class& q) {
  ExactReal r(std::move(basis));
  if (q != 0) r.terms_[Monomial(r.basis_->size() - 1, 0)] = q;
  return r;
}

ExactReal ExactReal::constant(BasisPtr basis, std::string_view name) {
  auto idx = basis->index_of(name);
  if (!idx) throw RepresentationError("symbol '" + std::string(name) + "' is not in the basis");
  Monomial m(basis->size() - 1, 0);
  if (*idx > 0) m[*idx - 1] = 1;
  return monomial(std::move(basis), std::move(m));
}

ExactReal ExactReal::monomial(BasisPtr basis, Monomial m, const mpq_class& coeff) {
  ExactReal r(std::move(basis));
  if (m.size() != r.basis_->size() - 1) throw UsageError("monomial length does not match basis");
  if (coeff != 0) r.terms_[std::move(m)] = coeff;
  return r;
}

bool ExactReal::is_rational() const {
  for (const auto& [m, c] : terms_)
    for (int e : m)
      if (e != 0) return false;
  return true;
}

mpq_class ExactReal::rational_value() const {
  if (!is_rational()) throw RepresentationError(to_string() + " is not rational");
  return terms_.empty() ? mpq_class(0) : terms_.begin()->second;
}

std::vector<mpq_class> ExactReal::coordinates() const {
  std::vector<mpq_class> out(basis_->size(), 0);
  for (const auto& [m, c] : terms_) {
    int degree = 0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] < 0 || m[i] > 1) throw RepresentationError(to_string() + " is not linear in the basis");
      if (m[i] == 1) {
        ++degree;
        at = i + 1;
      }
    }
    if (degree > 1) throw RepresentationError(to_string() + " is not linear in the basis");
    out[at] = c;
  }
  return out;
}

long double ExactReal::value() const {
  long double s = 0.0L;
  const auto& el = basis_->elements();
  for (const auto& [m, c] : terms_) {
    long double t = static_cast<long double>(mpz_class(c.get_num()).get_d()) /
        static_cast<long double>(mpz_class(c.get_den()).get_d());
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t *= std::pow(el[i + 1].value, static_cast<long double>(m[i]));
    s += t;
  }
  return s;
}

std::string ExactReal::to_string() const {
  if (terms_.empty()) return "0";
  const auto& el = basis_->elements();
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    mpq_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string num, den;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      std::string f = el[i + 1].name;
      int e = std::abs(m[i]);
      if (e != 1) f += "^" + std::to_string(e);
      std::string& dst = m[i] > 0 ? num : den;
      if (!dst.empty()) dst += "*";
      dst += f;
    }
    std::string out;
    if (num.empty()) {
      out = a.get_num().get_str();
    } else if (a.get_num() == 1) {
      out = num;
    } else {
      out = a.get_num().get_str() + "*" + num;
    }
    std::string denominator = a.get_den() == 1 ? std::string() : a.get_den().get_str();
    if (!den.empty()) denominator = denominator.empty() ? den : denominator + "*" + den;
    if (!denominator.empty()) {
      bool compound = denominator.find('*') != std::string::npos;
      out += "/" + (compound ? "(" + denominator + ")" : denominator);
    }
    os << out;
  }
  return os.str();
}

void ExactReal::require_same_basis(const ExactReal& o) const {
  if (basis_ != o.basis_ && !(*basis_ == *o.basis_))
    throw UsageError("exact values over different symbol bases cannot be combined");
}

void ExactReal::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

ExactReal ExactReal::operator-() const {
  ExactReal r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

ExactReal& ExactReal::operator+=(const ExactReal& o) {
  require_same_basis(o);
  for (const auto& [m, c] : o.terms_) terms_[m] += c;
  prune();
  return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& o) {
  require_same_basis(o);
  for (const auto& [m, c] : o.terms_) terms_[m] -= c;
  prune();
  return *this;
}

ExactReal& ExactReal::operator*=(const mpq_class& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= q;
  return *this;
}

ExactReal operator*(const ExactReal& a, const ExactReal& b) {
  a.require_same_basis(b);
  ExactReal r(a.basis_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.terms_[m] += ca * cb;
    }
  }
  r.prune();
  return r;
}

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
  a.require_same_basis(b);
  if (b.terms_.empty()) throw DomainError("division by zero");
  if (b.terms_.size() != 1)
    throw RepresentationError("division by the sum " + b.to_string() + " is not representable");
  const auto& [mb, cb] = *b.terms_.begin();
  Monomial inv(mb.size());
  for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = -mb[i];
  mpq_class ic = 1 / cb;
  return a * ExactReal::monomial(a.basis_, inv, ic);
}

bool operator==(const ExactReal& a, const ExactReal& b) {
  a.require_same_basis(b);
  return a.terms_ == b.terms_;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const BasisPtr& basis, std::optional<Base> base)
      : s_(text), basis_(basis), base_(base) {}

  ExactReal parse() {
    ExactReal v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw UsageError("cannot parse '" + std::string(s_) + "' at position " + std::to_string(pos_) + ": " +
                     msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExactReal expr() {
    ExactReal v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  ExactReal term() {
    ExactReal v = unary();
    for (;;) {
      if (eat('*'))
        v = v * unary();
      else if (eat('/'))
        v = v / unary();
      else
        return v;
    }
  }

  ExactReal unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  ExactReal power() {
    ExactReal v = primary();
    if (!eat('^')) return v;
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be an integer");
    int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (e > 64) fail("exponent too large");
    ExactReal r = ExactReal::rational(basis_, 1);
    for (int i = 0; i < e; ++i) r = r * v;
    if (neg) r = ExactReal::rational(basis_, 1) / r;
    return r;
  }

  ExactReal primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExactReal v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ExactReal number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits(s_.substr(start, pos_ - start));
    std::string frac;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      frac = std::string(s_.substr(fs, pos_ - fs));
    }
    if (digits.empty() && frac.empty()) fail("malformed number");
    long exp10 = -static_cast<long>(frac.size());
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
      std::size_t es = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (es == pos_) fail("malformed exponent");
      long e = std::stol(std::string(s_.substr(es, pos_ - es)));
      if (e > 4096) fail("exponent too large");
      exp10 += neg ? -e : e;
    }
    mpz_class mant(digits + frac, 10);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    mpq_class q = exp10 >= 0 ? mpq_class(mant * p10) : mpq_class(mant, p10);
    q.canonicalize();
    return ExactReal::rational(basis_, q);
  }

  ExactReal identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    if (name == "lnb") {
      if (!base_) throw RepresentationError("'lnb' used without a target base");
      name = "ln" + std::to_string(base_->value());
    }
    if (name == "ln" && eat('(')) {
      skip();
      std::size_t ds = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (ds == pos_) fail("ln(...) takes an integer literal");
      name += std::string(s_.substr(ds, pos_ - ds));
      if (!eat(')')) fail("missing ')'");
    }
    if (name == "ln1") return ExactReal(basis_);
    if (!basis_->index_of(name)) {
      std::string known;
      for (std::size_t i = 1; i < basis_->size(); ++i) known += " " + basis_->elements()[i].name;
      throw RepresentationError("unknown symbol '" + name + "'; basis has:" + known);
    }
    return ExactReal::constant(basis_, name);
  }

  std::string_view s_;
  const BasisPtr& basis_;
  std::optional<Base> base_;
  std::size_t pos_ = 0;
};

}  // namespace

ExactReal parse_exact(std::string_view text, const BasisPtr& basis, std::optional<Base> base) {
  return Parser(text, basis, base).parse();
}

}  // namespace benflow
