#include "benflow/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "benflow/errors.hpp"

namespace benflow {

namespace {

void require_shared_basis(const BasisPtr& basis, const ExactReal& v) {
  if (v.basis() != basis && !(*v.basis() == *basis))
    throw UsageError("exact values over different symbol bases cannot be combined");
}

// Clears denominators: returns q > 0 and integers p with c_i = p_i / q.
std::pair<mpz_class, std::vector<mpz_class>> integerize(const std::vector<mpq_class>& c) {
  mpz_class q = 1;
  for (const auto& v : c) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), v.get_den_mpz_t());
  std::vector<mpz_class> p;
  p.reserve(c.size());
  for (const auto& v : c) p.push_back(v.get_num() * (q / v.get_den()));
  return {q, p};
}

std::string kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::RealPartInSpan:
      return "real part in span";
    case RelationKind::RationalArgumentGap:
      return "rational argument gap";
    case RelationKind::LogModulusInSpan:
      return "log modulus in span";
  }
  return "";
}

}  // namespace

std::optional<std::vector<mpq_class>> span_membership(const ExactReal& target,
                                                      std::span<const ExactReal> generators) {
  for (const auto& g : generators) require_shared_basis(target.basis(), g);

  std::map<Monomial, std::size_t> rows;
  auto collect = [&](const ExactReal& v) {
    for (const auto& [m, c] : v.terms()) rows.emplace(m, rows.size());
  };
  collect(target);
  for (const auto& g : generators) collect(g);

  const std::size_t nr = rows.size();
  const std::size_t nc = generators.size();
  std::vector<std::vector<mpq_class>> a(nr, std::vector<mpq_class>(nc + 1, 0));
  for (std::size_t j = 0; j < nc; ++j)
    for (const auto& [m, c] : generators[j].terms()) a[rows[m]][j] = c;
  for (const auto& [m, c] : target.terms()) a[rows[m]][nc] = c;

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < nc && r < nr; ++col) {
    std::size_t piv = r;
    while (piv < nr && a[piv][col] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(a[piv], a[r]);
    mpq_class inv = 1 / a[r][col];
    for (std::size_t k = col; k <= nc; ++k) a[r][k] *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || a[i][col] == 0) continue;
      mpq_class f = a[i][col];
      for (std::size_t k = col; k <= nc; ++k) a[i][k] -= f * a[r][k];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < nr; ++i)
    if (a[i][nc] != 0) return std::nullopt;

  std::vector<mpq_class> coeffs(nc, 0);
  for (std::size_t i = 0; i < r; ++i) coeffs[pivot_col[i]] = a[i][nc];
  return coeffs;
}

std::vector<ExactReal> delta_set(std::span<const PolarElement> z) {
  std::vector<ExactReal> out;
  if (z.empty()) return out;
  const BasisPtr& basis = z.front().arg_turns.basis();
  ExactReal one = ExactReal::rational(basis, 1);
  for (const auto& a : z) {
    if (a.origin) continue;
    for (const auto& w : z) {
      if (w.origin) continue;
      ExactReal d = one + a.arg_turns - w.arg_turns;
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
    }
  }
  return out;
}

std::string RelationWitness::describe() const {
  std::ostringstream os;
  os << kind_name(kind) << ": ";
  switch (kind) {
    case RelationKind::RealPartInSpan:
      os << q.get_str() << " * Re z[" << target << "] =";
      if (p.empty()) os << " 0";
      for (std::size_t l = 0; l < p.size(); ++l)
        os << (l ? " +" : "") << " " << p[l].get_str() << " * (ln b/pi) Im z[" << elements[l] << "]";
      break;
    case RelationKind::RationalArgumentGap:
      os << "(arg z[" << target << "] - arg z[" << elements.at(0) << "])/(2 pi) = " << p.at(0).get_str()
         << "/" << q.get_str();
      break;
    case RelationKind::LogModulusInSpan:
      os << q.get_str() << " * log_b |z[" << target << "]| = " << p0.get_str();
      for (std::size_t l = 0; l < p.size(); ++l)
        os << " + " << p[l].get_str() << " * (arg z[" << elements[l] << "] - arg z[" << target
           << "])/(2 pi)";
      break;
  }
  return os.str();
}

ResonanceVerdict is_b_nonresonant(std::span<const PolarElement> z, Base /*b*/) {
  ResonanceVerdict v;
  if (z.empty()) return v;
  const BasisPtr& basis = z.front().log_modulus.basis();
  v.assumption = basis->assumption();
  for (const auto& e : z) {
    require_shared_basis(basis, e.log_modulus);
    require_shared_basis(basis, e.arg_turns);
  }

  // Shells of equal modulus, holding distinct points only.
  std::vector<std::vector<std::size_t>> shells;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i].origin) continue;
    auto it = std::find_if(shells.begin(), shells.end(),
                           [&](const auto& s) { return z[s.front()].log_modulus == z[i].log_modulus; });
    if (it == shells.end()) {
      shells.push_back({i});
      continue;
    }
    bool duplicate = false;
    for (std::size_t j : *it) {
      ExactReal d = z[i].arg_turns - z[j].arg_turns;
      if (!d.is_rational()) continue;
      mpq_class g = d.rational_value();
      if (g.get_den() == 1) {
        duplicate = true;
        break;
      }
      RelationWitness w;
      w.kind = RelationKind::RationalArgumentGap;
      w.target = i;
      w.elements = {j};
      w.q = g.get_den();
      w.p = {g.get_num()};
      v.resonant = true;
      v.witness = std::move(w);
      return v;
    }
    if (!duplicate) it->push_back(i);
  }

  for (const auto& shell : shells) {
    const std::size_t ref = shell.front();
    std::vector<ExactReal> gens;
    gens.push_back(ExactReal::rational(basis, 1));
    for (std::size_t k = 1; k < shell.size(); ++k) gens.push_back(z[shell[k]].arg_turns - z[ref].arg_turns);
    auto c = span_membership(z[ref].log_modulus, gens);
    if (!c) continue;
    auto [q, p] = integerize(*c);
    RelationWitness w;
    w.kind = RelationKind::LogModulusInSpan;
    w.target = ref;
    w.q = q;
    w.p0 = p[0];
    for (std::size_t k = 1; k < shell.size(); ++k) {
      if (p[k] == 0) continue;
      w.elements.push_back(shell[k]);
      w.p.push_back(p[k]);
    }
    v.resonant = true;
    v.witness = std::move(w);
    return v;
  }
  return v;
}

ResonanceVerdict is_exp_b_nonresonant(std::span<const ExactComplex> z, Base b) {
  ResonanceVerdict v;
  if (z.empty()) {
    v.resonant = true;
    return v;
  }
  const BasisPtr& basis = z.front().re.basis();
  v.assumption = basis->assumption();
  for (const auto& e : z) {
    require_shared_basis(basis, e.re);
    require_shared_basis(basis, e.im);
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    ExactComplex c = z[i].conj();
    if (std::none_of(z.begin(), z.end(), [&](const ExactComplex& w) { return w == c; }))
      throw UsageError("Z must be symmetric with respect to the real axis: conjugate of element " +
                       std::to_string(i) + " is missing");
  }

  const std::string ln_name = "ln" + std::to_string(b.value());
  auto scale = [&]() -> std::optional<ExactReal> {
    if (!basis->index_of("pi") || !basis->index_of(ln_name)) return std::nullopt;
    return ExactReal::constant(basis, ln_name) / ExactReal::constant(basis, "pi");
  }();

  for (std::size_t i = 0; i < z.size(); ++i) {
    std::vector<ExactReal> gens;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (!(z[j].re == z[i].re) || z[j].im.is_zero() || z[j].im.value() < 0) continue;
      ExactComplex wj = z[j];
      bool seen = false;
      for (std::size_t k : idx) seen = seen || z[k] == wj;
      if (seen) continue;
      if (!scale)
        throw RepresentationError("basis lacks pi or " + ln_name + "; cannot form (ln b/pi) Im w exactly");
      gens.push_back(*scale * z[j].im);
      idx.push_back(j);
    }
    auto c = span_membership(z[i].re, gens);
    if (!c) continue;
    auto [q, p] = integerize(*c);
    RelationWitness w;
    w.kind = RelationKind::RealPartInSpan;
    w.target = i;
    w.q = q;
    for (std::size_t l = 0; l < idx.size(); ++l) {
      if (p[l] == 0) continue;
      w.elements.push_back(idx[l]);
      w.p.push_back(p[l]);
    }
    v.resonant = true;
    v.witness = std::move(w);
    return v;
  }
  return v;
}

bool is_exp_nonresonant_algebraic(std::span<const std::complex<double>> z, double tol) {
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  return std::all_of(z.begin(), z.end(), [&](const auto& w) { return std::abs(w.real()) > tol; });
}

std::optional<std::vector<long long>> find_integer_relation(std::span<const long double> x, long long bound,
                                                            long double eps) {
  using LD = long double;
  const std::size_t n = x.size();
  if (n == 0) throw UsageError("integer relation search needs at least one value");
  if (bound < 1) throw UsageError("relation bound must be >= 1");
  LD norm = 0.0L;
  for (LD v : x) {
    if (!std::isfinite(v)) throw DomainError("integer relation input must be finite");
    norm = std::max(norm, std::fabs(v));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(x[i]) <= eps * norm || norm == 0.0L) {
      std::vector<long long> e(n, 0);
      e[i] = 1;
      return e;
    }
  }
  if (n == 1) return std::nullopt;

  const LD gamma = 1.2L;
  std::vector<LD> y(n), s(n);
  for (std::size_t k = 0; k < n; ++k) {
    LD acc = 0.0L;
    for (std::size_t j = k; j < n; ++j) acc += (x[j] / norm) * (x[j] / norm);
    s[k] = std::sqrt(acc);
  }
  const LD t0 = s[0];
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = x[k] / norm / t0;
    s[k] /= t0;
  }

  std::vector<std::vector<LD>> h(n, std::vector<LD>(n - 1, 0.0L));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      if (i == j)
        h[i][j] = s[j + 1] / s[j];
      else if (i > j)
        h[i][j] = -y[i] * y[j] / (s[j] * s[j + 1]);
    }
  }
  std::vector<std::vector<LD>> a(n, std::vector<LD>(n, 0.0L)), bm(n, std::vector<LD>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = bm[i][i] = 1.0L;

  auto reduce = [&](std::size_t i, std::size_t j) {
    if (h[j][j] == 0.0L) return;
    LD t = std::round(h[i][j] / h[j][j]);
    if (t == 0.0L) return;
    y[j] += t * y[i];
    for (std::size_t k = 0; k <= j; ++k) h[i][k] -= t * h[j][k];
    for (std::size_t k = 0; k < n; ++k) {
      a[i][k] -= t * a[j][k];
      bm[k][j] += t * bm[k][i];
    }
  };
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i; j-- > 0;) reduce(i, j);

  const LD limit = static_cast<LD>(bound) * std::sqrt(static_cast<LD>(n));
  const std::size_t max_iter = 2000 * n;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    std::size_t m = 0;
    LD best = -1.0L, gp = gamma;
    for (std::size_t i = 0; i + 1 < n; ++i, gp *= gamma) {
      LD v = gp * std::fabs(h[i][i]);
      if (v > best) {
        best = v;
        m = i;
      }
    }
    std::swap(y[m], y[m + 1]);
    std::swap(h[m], h[m + 1]);
    std::swap(a[m], a[m + 1]);
    for (std::size_t k = 0; k < n; ++k) std::swap(bm[k][m], bm[k][m + 1]);
    if (m + 2 < n) {
      LD r = std::hypot(h[m][m], h[m][m + 1]);
      if (r == 0.0L) return std::nullopt;
      LD c1 = h[m][m] / r, c2 = h[m][m + 1] / r;
      for (std::size_t i = m; i < n; ++i) {
        LD u = h[i][m], w = h[i][m + 1];
        h[i][m] = c1 * u + c2 * w;
        h[i][m + 1] = -c2 * u + c1 * w;
      }
    }
    for (std::size_t i = m + 1; i < n; ++i)
      for (std::size_t j = std::min(i - 1, m + 1) + 1; j-- > 0;) reduce(i, j);

    for (std::size_t j = 0; j < n; ++j) {
      if (std::fabs(y[j]) >= eps) continue;
      std::vector<long long> rel(n);
      bool fits = true;
      for (std::size_t k = 0; k < n; ++k) {
        LD c = bm[k][j];
        if (std::fabs(c) > static_cast<LD>(bound)) fits = false;
        rel[k] = static_cast<long long>(std::llround(c));
      }
      if (!fits) return std::nullopt;
      return rel;
    }

    LD hmax = 0.0L, amax = 0.0L;
    for (std::size_t j = 0; j + 1 < n; ++j) hmax = std::max(hmax, std::fabs(h[j][j]));
    if (hmax == 0.0L || 1.0L / hmax > limit) return std::nullopt;
    for (const auto& row : a)
      for (LD v : row) amax = std::max(amax, std::fabs(v));
    if (amax > 0x1p60L) return std::nullopt;
  }
  return std::nullopt;
}

std::optional<IntegerRelation> numeric_relation_scan(std::span<const std::complex<double>> z, Base b,
                                                     int height) {
  if (height < 1) throw UsageError("height must be >= 1");
  if (height > (1 << 20)) throw UsageError("height exceeds the working-precision limit 2^20");
  const long double lnb_over_pi = std::log(static_cast<long double>(b.value())) / std::numbers::pi_v<long double>;

  std::vector<bool> used(z.size(), false);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    const double re = z[i].real();
    std::vector<std::complex<double>> group;
    for (std::size_t j = i; j < z.size(); ++j) {
      if (std::fabs(z[j].real() - re) <= 1e-9 * std::max(1.0, std::fabs(re))) {
        used[j] = true;
        group.push_back(z[j]);
      }
    }
    if (std::fabs(re) < 1e-12) return IntegerRelation{z[i], {}, 1, {}, std::fabs(re)};

    std::vector<std::complex<double>> elems;
    std::vector<long double> gens;
    for (const auto& w : group) {
      if (!(w.imag() > 1e-12 * std::max(1.0, std::abs(w)))) continue;
      long double g = lnb_over_pi * static_cast<long double>(w.imag());
      bool seen = std::any_of(gens.begin(), gens.end(), [&](long double h) {
        return std::fabs(h - g) <= 1e-12L * std::max(1.0L, std::fabs(g));
      });
      if (seen) continue;
      elems.push_back(w);
      gens.push_back(g);
    }

    while (!gens.empty()) {
      std::vector<long double> x;
      x.push_back(static_cast<long double>(re));
      x.insert(x.end(), gens.begin(), gens.end());
      auto rel = find_integer_relation(x, height);
      if (!rel) break;
      if ((*rel)[0] == 0) {
        std::size_t drop = gens.size();
        while (drop > 0 && (*rel)[drop] == 0) --drop;
        gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(drop - 1));
        elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(drop - 1));
        continue;
      }
      long long sign = (*rel)[0] > 0 ? 1 : -1;
      IntegerRelation out;
      out.target = z[i];
      out.q = sign * (*rel)[0];
      long double scale = std::fabs(static_cast<long double>(re));
      long double res = static_cast<long double>(out.q) * static_cast<long double>(re);
      for (std::size_t l = 0; l < gens.size(); ++l) {
        long long p = -sign * (*rel)[l + 1];
        scale = std::max(scale, std::fabs(gens[l]));
        if (p == 0) continue;
        out.elements.push_back(elems[l]);
        out.p.push_back(p);
        res -= static_cast<long double>(p) * gens[l];
      }
      out.residual = static_cast<double>(std::fabs(res));
      if (out.residual < 1e-9 * std::max(1.0L, scale)) return out;
      break;
    }
  }
  return std::nullopt;
}

}  // namespace benflow
