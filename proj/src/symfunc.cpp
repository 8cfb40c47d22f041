#include "opchris/symfunc.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace opchris {

Partition::Partition(std::initializer_list<int> p) : parts(p) {
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  for (int x : parts)
    if (x < 1) throw std::invalid_argument("partition parts must be positive");
}

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  std::sort(parts.begin(), parts.end(), std::greater<int>());
  for (int x : parts)
    if (x < 1) throw std::invalid_argument("partition parts must be positive");
}

int Partition::weight() const {
  int w = 0;
  for (int x : parts) w += x;
  return w;
}

std::string Partition::str() const {
  std::string out = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts[i]);
  }
  return out + ")";
}

std::vector<Partition> partitions_of(int n, int min_part) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxp) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rest, maxp); p >= min_part; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(n, n);
  return out;
}

Int z_of(const Partition& lam) {
  Int z = 1;
  int run = 0, prev = -1;
  for (int x : lam.parts) {
    if (x == prev) ++run;
    else { prev = x; run = 1; }
    z *= Int(x) * run;  // accumulates i^{m_i} * m_i! across the run
  }
  return z;
}

void SymFunc::add(const Partition& lam, const Rational& c) {
  if (c == 0 || lam.weight() > maxdeg) return;
  auto [it, fresh] = terms.emplace(lam, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

SymFunc SymFunc::piece(int degree) const {
  SymFunc out(basis, maxdeg);
  for (const auto& [lam, c] : terms)
    if (lam.weight() == degree) out.terms.emplace(lam, c);
  return out;
}

bool SymFunc::operator==(const SymFunc& o) const {
  return basis == o.basis && terms == o.terms;
}

std::string SymFunc::str() const {
  if (terms.empty()) return "0";
  const char letter = basis == SFBasis::p ? 'p' : basis == SFBasis::e ? 'e' : 'm';
  std::vector<const std::pair<const Partition, Rational>*> order;
  for (const auto& term : terms) order.push_back(&term);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    if (a->first.weight() != b->first.weight())
      return a->first.weight() < b->first.weight();
    return a->first < b->first;
  });

  std::string out;
  for (auto* term : order) {
    const auto& [lam, c] = *term;
    std::string mono;
    if (basis == SFBasis::m && !lam.parts.empty()) {
      mono = fmt::format("m{}", lam.str());
    } else {
      size_t i = 0;
      while (i < lam.parts.size()) {
        size_t j = i;
        while (j < lam.parts.size() && lam.parts[j] == lam.parts[i]) ++j;
        if (!mono.empty()) mono += "*";
        mono += fmt::format("{}{}", letter, lam.parts[i]);
        if (j - i > 1) mono += fmt::format("^{}", j - i);
        i = j;
      }
    }
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    std::string body =
        mono.empty() ? rat_str(mag)
                     : (mag == 1 ? mono : rat_str(mag) + "*" + mono);
    if (out.empty()) out += (neg ? "-" : "") + body;
    else out += (neg ? " - " : " + ") + body;
  }
  return out;
}

SymFunc sf_p(int n, int maxdeg) {
  SymFunc f(SFBasis::p, maxdeg);
  f.add(Partition{n}, 1);
  return f;
}

SymFunc sf_e(int n, int maxdeg) {
  SymFunc f(SFBasis::e, maxdeg);
  f.add(Partition{n}, 1);
  return f;
}

SymFunc operator+(const SymFunc& a, const SymFunc& b) {
  if (a.basis != b.basis) throw std::invalid_argument("basis mismatch in +");
  SymFunc out(a.basis, std::min(a.maxdeg, b.maxdeg));
  for (const auto& [lam, c] : a.terms) out.add(lam, c);
  for (const auto& [lam, c] : b.terms) out.add(lam, c);
  return out;
}

SymFunc operator-(const SymFunc& a, const SymFunc& b) {
  if (a.basis != b.basis) throw std::invalid_argument("basis mismatch in -");
  SymFunc out(a.basis, std::min(a.maxdeg, b.maxdeg));
  for (const auto& [lam, c] : a.terms) out.add(lam, c);
  for (const auto& [lam, c] : b.terms) out.add(lam, -c);
  return out;
}

SymFunc operator*(const SymFunc& a, const SymFunc& b) {
  if (a.basis != b.basis) throw std::invalid_argument("basis mismatch in *");
  if (a.basis == SFBasis::m)
    throw std::invalid_argument("m-basis is not multiplicative");
  SymFunc out(a.basis, std::min(a.maxdeg, b.maxdeg));
  for (const auto& [la, ca] : a.terms)
    for (const auto& [lb, cb] : b.terms) {
      if (la.weight() + lb.weight() > out.maxdeg) continue;
      std::vector<int> parts = la.parts;
      parts.insert(parts.end(), lb.parts.begin(), lb.parts.end());
      out.add(Partition(std::move(parts)), ca * cb);
    }
  return out;
}

SymFunc operator*(const Rational& c, SymFunc a) {
  if (c == 0) {
    a.terms.clear();
    return a;
  }
  for (auto& [lam, v] : a.terms) v *= c;
  return a;
}

// ---- basis conversions ------------------------------------------------------

namespace {

// Newton's identity n*e_n = sum_{i=1..n} (-1)^{i-1} e_{n-i} p_i, both ways.
const SymFunc& e_in_p(int n) {
  static std::map<int, SymFunc> memo;  // homogeneous, stored at maxdeg = n
  auto it = memo.find(n);
  if (it == memo.end()) {
    SymFunc f(SFBasis::p, n);
    if (n == 0) {
      f.add(Partition{}, 1);
    } else {
      for (int i = 1; i <= n; ++i) {
        SymFunc part = e_in_p(n - i);
        part.maxdeg = n;
        part = (Rational((i % 2) ? 1 : -1) / n) * (part * sf_p(i, n));
        for (const auto& [lam, c] : part.terms) f.add(lam, c);
      }
    }
    it = memo.emplace(n, std::move(f)).first;
  }
  return it->second;
}

const SymFunc& p_in_e(int n) {
  static std::map<int, SymFunc> memo;
  auto it = memo.find(n);
  if (it == memo.end()) {
    // p_n = (-1)^{n-1} (n e_n - sum_{i=1..n-1} (-1)^{i-1} e_{n-i} p_i)
    SymFunc f(SFBasis::e, n);
    SymFunc acc(SFBasis::e, n);
    for (int i = 1; i <= n - 1; ++i) {
      SymFunc term = p_in_e(i);
      term.maxdeg = n;
      SymFunc en_i = sf_e(n - i, n);
      term = term * en_i;
      if (i % 2 == 0) term = Rational(-1) * term;
      acc = acc + term;
    }
    f.add(Partition{n}, Rational(n));
    f = f - acc;
    if (n % 2 == 0) f = Rational(-1) * f;
    it = memo.emplace(n, std::move(f)).first;
  }
  return it->second;
}

// Expand one basis element through per-monomial substitution.
SymFunc substitute_monomials(const SymFunc& f, SFBasis target,
                             const std::function<SymFunc(int)>& elem) {
  SymFunc out(target, f.maxdeg);
  for (const auto& [lam, c] : f.terms) {
    SymFunc prod(target, f.maxdeg);
    prod.add(Partition{}, 1);
    for (int part : lam.parts) {
      SymFunc base = elem(part);
      base.maxdeg = f.maxdeg;
      prod = prod * base;
    }
    out = out + (c * prod);
  }
  return out;
}

// Dense rational linear solve A x = b (A square, invertible).
std::vector<Rational> dense_solve(std::vector<std::vector<Rational>> A,
                                  std::vector<Rational> b) {
  const int n = static_cast<int>(A.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (A[r][col] != 0) { piv = r; break; }
    if (piv < 0) throw std::runtime_error("singular matrix in basis conversion");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    const Rational inv = Rational(1) / A[col][col];
    for (int c = col; c < n; ++c) A[col][c] *= inv;
    b[col] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const Rational f = A[r][col];
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  return b;
}

// Coefficient of the canonical monomial t_1^{lam_1} t_2^{lam_2} ... in a Poly
// over k variables.
Rational monomial_coeff(const Poly& poly, const Partition& lam, int k) {
  std::vector<int> key(k, 0);
  for (size_t i = 0; i < lam.parts.size(); ++i) key[i] = lam.parts[i];
  auto it = poly.find(key);
  return it == poly.end() ? Rational(0) : it->second;
}

}  // namespace

SymFunc convert(const SymFunc& f, SFBasis target) {
  if (f.basis == target) return f;

  if (f.basis == SFBasis::p && target == SFBasis::e)
    return substitute_monomials(f, target, [&](int n) { return p_in_e(n); });
  if (f.basis == SFBasis::e && target == SFBasis::p)
    return substitute_monomials(f, target, [&](int n) { return e_in_p(n); });

  if (target == SFBasis::m) {
    const SymFunc fp = convert(f, SFBasis::p);
    SymFunc out(SFBasis::m, f.maxdeg);
    const int k = std::max(f.maxdeg, 1);
    // Group the variable expansion by sorted exponent pattern.
    Poly expanded = expand_in_variables(fp, k);
    std::map<Partition, Rational> coeffs;
    for (const auto& [expv, c] : expanded) {
      std::vector<int> sorted;
      for (int e : expv)
        if (e > 0) sorted.push_back(e);
      std::sort(sorted.begin(), sorted.end(), std::greater<int>());
      std::vector<int> canonical(expv.size(), 0);
      for (size_t i = 0; i < sorted.size(); ++i) canonical[i] = sorted[i];
      if (canonical == expv) coeffs[Partition(sorted)] = c;
    }
    for (const auto& [lam, c] : coeffs) out.add(lam, c);
    return out;
  }

  if (f.basis == SFBasis::m) {
    // Degree by degree: express the m-coefficients in the p-basis by solving
    // against the m-expansions of p_lambda.
    SymFunc out_p(SFBasis::p, f.maxdeg);
    for (int n = 0; n <= f.maxdeg; ++n) {
      const SymFunc fn = f.piece(n);
      if (fn.is_zero()) continue;
      if (n == 0) {
        for (const auto& [lam, c] : fn.terms) out_p.add(lam, c);
        continue;
      }
      const auto lams = partitions_of(n);
      const int sz = static_cast<int>(lams.size());
      const int k = n;
      // A[row of mu][col of lam] = coeff of m_mu in p_lam.
      std::vector<std::vector<Rational>> A(sz, std::vector<Rational>(sz, 0));
      for (int col = 0; col < sz; ++col) {
        SymFunc plam(SFBasis::p, n);
        plam.add(lams[col], 1);
        Poly expanded = expand_in_variables(plam, k);
        for (int row = 0; row < sz; ++row)
          A[row][col] = monomial_coeff(expanded, lams[row], k);
      }
      std::vector<Rational> b(sz, 0);
      for (int row = 0; row < sz; ++row) {
        auto it = fn.terms.find(lams[row]);
        if (it != fn.terms.end()) b[row] = it->second;
      }
      const auto x = dense_solve(std::move(A), std::move(b));
      for (int col = 0; col < sz; ++col) out_p.add(lams[col], x[col]);
    }
    return target == SFBasis::p ? out_p : convert(out_p, target);
  }
  throw std::logic_error("unhandled basis conversion");
}

SymFunc plethysm(const SymFunc& f, const SymFunc& g) {
  const SymFunc fp = convert(f, SFBasis::p);
  const SymFunc gp = convert(g, SFBasis::p);
  for (const auto& [lam, c] : gp.terms)
    if (lam.weight() == 0)
      throw std::invalid_argument("plethysm: inner series has a constant term");

  const int maxdeg = std::min(f.maxdeg, g.maxdeg);
  // p_n o g: multiply every part of g's partitions by n.
  auto pk_of_g = [&](int n) {
    SymFunc out(SFBasis::p, maxdeg);
    for (const auto& [lam, c] : gp.terms) {
      std::vector<int> parts;
      parts.reserve(lam.parts.size());
      for (int x : lam.parts) parts.push_back(x * n);
      out.add(Partition(std::move(parts)), c);
    }
    return out;
  };

  SymFunc out(SFBasis::p, maxdeg);
  for (const auto& [lam, c] : fp.terms) {
    SymFunc prod(SFBasis::p, maxdeg);
    prod.add(Partition{}, 1);
    for (int part : lam.parts) prod = prod * pk_of_g(part);
    out = out + (c * prod);
  }
  return out;
}

SymFunc at_minus_p(const SymFunc& f) {
  const SymFunc fp = convert(f, SFBasis::p);
  SymFunc out(SFBasis::p, fp.maxdeg);
  for (const auto& [lam, c] : fp.terms)
    out.add(lam, (lam.length() % 2) ? -c : c);
  return out;
}

SymFunc koszul_inverse(const SymFunc& g_dual, int maxdeg) {
  SymFunc g = convert(g_dual, SFBasis::p);
  g.maxdeg = std::min(g.maxdeg, maxdeg);
  {
    SymFunc lin = g.piece(1);
    if (!(lin == sf_p(1, g.maxdeg).piece(1)))
      throw std::invalid_argument("koszul_inverse: linear term must be p_1");
  }
  SymFunc g_hi(SFBasis::p, maxdeg);
  for (const auto& [lam, c] : g.terms)
    if (lam.weight() >= 2) g_hi.add(lam, c);

  SymFunc F = sf_p(1, maxdeg);
  for (int n = 2; n <= maxdeg; ++n) {
    const SymFunc corr = plethysm(g_hi, F).piece(n);
    F = F - corr;
  }
  return F;
}

namespace {

// exp(S) for a series without constant term, truncated.
SymFunc exp_series(const SymFunc& S) {
  SymFunc out(SFBasis::p, S.maxdeg);
  out.add(Partition{}, 1);
  SymFunc term(SFBasis::p, S.maxdeg);
  term.add(Partition{}, 1);
  for (int k = 1; k <= S.maxdeg; ++k) {
    term = (Rational(1) / k) * (term * S);
    if (term.is_zero()) break;
    out = out + term;
  }
  return out;
}

SymFunc minus_sum_pi_over_i(int maxdeg) {
  SymFunc S(SFBasis::p, maxdeg);
  for (int i = 1; i <= maxdeg; ++i) S.add(Partition{i}, Rational(-1) / i);
  return S;
}

SymFunc binary_dual_piece(int maxdeg) {
  SymFunc h(SFBasis::p, maxdeg);
  h.add(Partition{1, 1}, Rational(1) / 2);
  h.add(Partition{2}, Rational(1) / 2);
  return h;
}

}  // namespace

SymFunc kernel_dual_series(int maxdeg) {
  SymFunc one(SFBasis::p, maxdeg);
  one.add(Partition{}, 1);
  return one - exp_series(minus_sum_pi_over_i(maxdeg)) - binary_dual_piece(maxdeg);
}

SymFunc tree_dual_series(int maxdeg) {
  return sf_p(1, maxdeg) * exp_series(minus_sum_pi_over_i(maxdeg)) -
         binary_dual_piece(maxdeg);
}

SymFunc f_la(int maxdeg) {
  return convert(koszul_inverse(kernel_dual_series(maxdeg), maxdeg), SFBasis::e);
}

Poly poly_mul(const Poly& a, const Poly& b, int max_total_deg) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    int da = 0;
    for (int x : ea) da += x;
    for (const auto& [eb, cb] : b) {
      int db = 0;
      for (int x : eb) db += x;
      if (da + db > max_total_deg) continue;
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      Rational& slot = out[e];
      slot += ca * cb;
      if (slot == 0) out.erase(e);
    }
  }
  return out;
}

Poly expand_in_variables(const SymFunc& f, int k) {
  const SymFunc fp = convert(f, SFBasis::p);
  Poly out;
  for (const auto& [lam, c] : fp.terms) {
    Poly prod{{std::vector<int>(k, 0), 1}};
    for (int part : lam.parts) {
      Poly power_sum;
      for (int v = 0; v < k; ++v) {
        std::vector<int> e(k, 0);
        e[v] = part;
        power_sum.emplace(std::move(e), 1);
      }
      prod = poly_mul(prod, power_sum, fp.maxdeg);
    }
    for (const auto& [e, pc] : prod) {
      Rational& slot = out[e];
      slot += c * pc;
      if (slot == 0) out.erase(e);
    }
  }
  return out;
}

std::vector<Rational> egf_specialize(const SymFunc& f) {
  const SymFunc fp = convert(f, SFBasis::p);
  std::vector<Rational> out(fp.maxdeg + 1, 0);
  for (const auto& [lam, c] : fp.terms) {
    bool all_ones = true;
    for (int x : lam.parts) all_ones &= (x == 1);
    if (all_ones) out[lam.length()] += c;
  }
  return out;
}

std::vector<Rational> tree_egf_solve(int n) {
  // Truncated power series as coefficient vectors c[0..n].
  using Series = std::vector<Rational>;
  auto mul = [&](const Series& a, const Series& b) {
    Series out(n + 1, 0);
    for (int i = 0; i <= n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  };
  auto expser = [&](const Series& a) {  // a has zero constant term
    Series out(n + 1, 0), term(n + 1, 0);
    out[0] = term[0] = 1;
    for (int k = 1; k <= n; ++k) {
      term = mul(term, a);
      for (auto& x : term) x /= k;
      for (int i = 0; i <= n; ++i) out[i] += term[i];
    }
    return out;
  };

  Series f(n + 1, 0);
  for (int deg = 1; deg <= n; ++deg) {
    const Series ef = expser(f);
    const Series f2 = mul(f, f);
    // rhs = t*e^f + (f^2/2)*e^f; its degree-deg coefficient only involves
    // f-coefficients below deg.
    Rational val = ef[deg - 1];
    Series half_f2_ef = mul(f2, ef);
    val += half_f2_ef[deg] / 2;
    f[deg] = val;
  }
  return Series(f.begin() + 1, f.end());
}

}  // namespace opchris
