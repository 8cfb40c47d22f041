#include "opchris/jets.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace opchris {

namespace {

int vec_deg(const std::vector<int>& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

// Graded-lex order on exponent vectors.
bool graded_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  const int da = vec_deg(a), db = vec_deg(b);
  if (da != db) return da < db;
  return a < b;
}

void gen_exps(int d, int R, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(d, 0);
  for (int deg = 0; deg <= R; ++deg) {
    std::vector<std::vector<int>> level;
    std::function<void(int, int)> fill = [&](int pos, int left) {
      if (pos == d) {
        if (left == 0) level.push_back(cur);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        cur[pos] = v;
        fill(pos + 1, left - v);
      }
      cur[pos] = 0;
    };
    fill(0, deg);
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
}

}  // namespace

int JetSpace::index(const std::vector<int>& e) const {
  if (static_cast<int>(e.size()) != d)
    throw std::invalid_argument("exponent vector length mismatch");
  if (vec_deg(e) > R) return -1;
  auto it = std::lower_bound(exps.begin(), exps.end(), e, graded_lex_less);
  return static_cast<int>(it - exps.begin());
}

JetSpacePtr JetSpace::get(int d, int R) {
  static std::map<std::pair<int, int>, JetSpacePtr> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto& slot = cache[{d, R}];
  if (!slot) {
    auto sp = std::make_shared<JetSpace>();
    sp->d = d;
    sp->R = R;
    gen_exps(d, R, sp->exps);
    slot = sp;
  }
  return slot;
}

Jet::Jet(JetSpacePtr s, const Rational& constant)
    : sp(std::move(s)), valid(sp->R), c(sp->exps.size(), 0) {
  c[0] = constant;
}

Rational Jet::coeff(const std::vector<int>& e) const {
  const int i = sp->index(e);
  return i < 0 ? Rational(0) : c[i];
}

void Jet::set(const std::vector<int>& e, const Rational& v) {
  const int i = sp->index(e);
  if (i < 0) throw std::out_of_range("exponent beyond truncation order");
  c[i] = v;
}

bool Jet::zero_to(int order) const {
  if (order > valid)
    throw std::invalid_argument("zero_to: order exceeds the trusted range");
  for (size_t i = 0; i < c.size(); ++i) {
    if (vec_deg(sp->exps[i]) > order) break;
    if (c[i] != 0) return false;
  }
  return true;
}

std::string Jet::str(int order) const {
  std::string out;
  for (size_t i = 0; i < c.size(); ++i) {
    if (vec_deg(sp->exps[i]) > order) break;
    if (c[i] == 0) continue;
    std::string mono;
    for (int v = 0; v < sp->d; ++v) {
      const int e = sp->exps[i][v];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += fmt::format("u{}", v + 1);
      if (e > 1) mono += fmt::format("^{}", e);
    }
    const bool neg = c[i] < 0;
    const Rational mag = neg ? Rational(-c[i]) : c[i];
    std::string body =
        mono.empty() ? rat_str(mag) : (mag == 1 ? mono : rat_str(mag) + "*" + mono);
    if (out.empty()) out += (neg ? "-" : "") + body;
    else out += (neg ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

Jet operator+(const Jet& a, const Jet& b) {
  if (a.sp != b.sp) throw std::invalid_argument("jet space mismatch");
  Jet out = a;
  out.valid = std::min(a.valid, b.valid);
  for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  if (a.sp != b.sp) throw std::invalid_argument("jet space mismatch");
  Jet out = a;
  out.valid = std::min(a.valid, b.valid);
  for (size_t i = 0; i < out.c.size(); ++i) out.c[i] -= b.c[i];
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.sp != b.sp) throw std::invalid_argument("jet space mismatch");
  const auto& sp = *a.sp;
  Jet out(a.sp);
  out.valid = std::min(a.valid, b.valid);
  std::vector<int> degs(sp.exps.size());
  for (size_t i = 0; i < sp.exps.size(); ++i) degs[i] = vec_deg(sp.exps[i]);

  std::vector<int> sum(sp.d);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0 || degs[i] + degs[j] > sp.R) continue;
      for (int v = 0; v < sp.d; ++v) sum[v] = sp.exps[i][v] + sp.exps[j][v];
      out.c[sp.index(sum)] += a.c[i] * b.c[j];
    }
  }
  return out;
}

Jet operator*(const Rational& s, Jet a) {
  for (auto& x : a.c) x *= s;
  return a;
}

bool agree_to(const Jet& a, const Jet& b, int order) {
  if (a.sp != b.sp) throw std::invalid_argument("jet space mismatch");
  if (order > a.valid || order > b.valid)
    throw std::invalid_argument("agree_to: order exceeds the trusted range");
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (vec_deg(a.sp->exps[i]) > order) break;
    if (a.c[i] != b.c[i]) return false;
  }
  return true;
}

Jet partial(const Jet& a, int var) {
  Jet out(a.sp);
  out.valid = a.valid - 1;
  std::vector<int> e(a.sp->d);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0 || a.sp->exps[i][var] == 0) continue;
    e = a.sp->exps[i];
    const int mult = e[var]--;
    out.c[a.sp->index(e)] += Rational(mult) * a.c[i];
  }
  return out;
}

Jet compose(const Jet& outer, const std::vector<Jet>& inner) {
  const int k = outer.sp->d;
  if (static_cast<int>(inner.size()) != k)
    throw std::invalid_argument("compose: wrong number of inner jets");
  const JetSpacePtr sp2 = inner[0].sp;
  int valid = outer.valid;
  for (const auto& j : inner) {
    if (j.sp != sp2) throw std::invalid_argument("compose: inner space mismatch");
    if (j.c[0] != 0)
      throw std::invalid_argument("compose: inner jets must be deviations");
    valid = std::min(valid, j.valid);
  }

  // Powers of each inner jet, grown on demand.
  std::vector<std::vector<Jet>> pw(k);
  for (int i = 0; i < k; ++i) pw[i].push_back(Jet(sp2, 1));
  auto power = [&](int i, int e) -> const Jet& {
    while (static_cast<int>(pw[i].size()) <= e)
      pw[i].push_back(pw[i].back() * inner[i]);
    return pw[i][e];
  };

  Jet out(sp2);
  out.valid = valid;
  for (size_t t = 0; t < outer.c.size(); ++t) {
    if (outer.c[t] == 0) continue;
    const auto& gamma = outer.sp->exps[t];
    if (vec_deg(gamma) > sp2->R) continue;  // lands beyond the truncation
    Jet term(sp2, outer.c[t]);
    for (int i = 0; i < k; ++i)
      if (gamma[i] > 0) term = term * power(i, gamma[i]);
    term.valid = valid;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += term.c[i];
  }
  return out;
}

Jet reciprocal(const Jet& a) {
  if (a.c[0] == 0)
    throw std::invalid_argument("reciprocal: zero constant term");
  const Rational inv0 = Rational(1) / a.c[0];
  // 1/a = (1/a0) * sum_k (1 - a/a0)^k
  Jet u = inv0 * a;
  u.c[0] -= 1;  // u = a/a0 - 1; use powers of -u
  for (auto& x : u.c) x = -x;
  Jet out(a.sp, 1);
  Jet term(a.sp, 1);
  for (int k = 1; k <= a.sp->R; ++k) {
    term = term * u;
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += term.c[i];
  }
  out = inv0 * out;
  out.valid = a.valid;
  return out;
}

std::vector<Jet> invert_map(const std::vector<Jet>& phi) {
  const int d = static_cast<int>(phi.size());
  const JetSpacePtr sp = phi[0].sp;
  if (sp->d != d) throw std::invalid_argument("invert_map: needs d jets in d vars");
  int valid = sp->R;
  for (const auto& p : phi) {
    if (p.sp != sp) throw std::invalid_argument("invert_map: space mismatch");
    if (p.c[0] != 0) throw std::invalid_argument("invert_map: nonzero constant");
    valid = std::min(valid, p.valid);
  }

  // Invert the linear part exactly.
  std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d, 0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<int> e(d, 0);
      e[j] = 1;
      A[i][j] = phi[i].coeff(e);
    }
  std::vector<std::vector<Rational>> Ainv(d, std::vector<Rational>(d, 0));
  for (int i = 0; i < d; ++i) Ainv[i][i] = 1;
  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r)
      if (A[r][col] != 0) { piv = r; break; }
    if (piv < 0) throw std::invalid_argument("invert_map: singular linear part");
    std::swap(A[piv], A[col]);
    std::swap(Ainv[piv], Ainv[col]);
    const Rational inv = Rational(1) / A[col][col];
    for (int c2 = 0; c2 < d; ++c2) { A[col][c2] *= inv; Ainv[col][c2] *= inv; }
    for (int r = 0; r < d; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const Rational f = A[r][col];
      for (int c2 = 0; c2 < d; ++c2) {
        A[r][c2] -= f * A[col][c2];
        Ainv[r][c2] -= f * Ainv[col][c2];
      }
    }
  }

  // N = phi minus its linear part; iterate psi <- Ainv * (y - N(psi)).
  std::vector<Jet> N(d, Jet(sp));
  for (int i = 0; i < d; ++i) {
    N[i] = phi[i];
    for (size_t t = 0; t < N[i].c.size(); ++t)
      if (vec_deg(sp->exps[t]) <= 1) N[i].c[t] = 0;
  }
  std::vector<Jet> y(d, Jet(sp));
  for (int i = 0; i < d; ++i) {
    std::vector<int> e(d, 0);
    e[i] = 1;
    y[i].set(e, 1);
  }
  std::vector<Jet> psi(d, Jet(sp));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Jet t = Ainv[i][j] * y[j];
      for (size_t q = 0; q < psi[i].c.size(); ++q) psi[i].c[q] += t.c[q];
    }

  for (int round = 2; round <= sp->R; ++round) {
    std::vector<Jet> next(d, Jet(sp));
    std::vector<Jet> Npsi(d, Jet(sp));
    for (int i = 0; i < d; ++i) Npsi[i] = compose(N[i], psi);
    for (int i = 0; i < d; ++i) {
      Jet res(sp);
      for (int j = 0; j < d; ++j) {
        Jet t = Ainv[i][j] * (y[j] - Npsi[j]);
        for (size_t q = 0; q < res.c.size(); ++q) res.c[q] += t.c[q];
      }
      next[i] = std::move(res);
    }
    psi = std::move(next);
  }
  for (auto& p : psi) p.valid = valid;
  return psi;
}

}  // namespace opchris
