#include "opchris/upsilon.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "opchris/geoderiv.hpp"

namespace opchris {

namespace {

// Deterministic sparse small rationals from raw engine output (modulo on the
// raw 64-bit values keeps the stream platform-independent).
Rational small_rat(std::mt19937_64& g) {
  const unsigned long long r = g();
  if (r % 4 == 0) return 0;
  const long long num = static_cast<long long>((r >> 2) % 7) - 3;
  const unsigned long long den = 1 + ((r >> 5) % 3);
  if (num == 0) return 0;
  return Rational(Int(num), Int(den));
}

void fill_jet(Jet& j, std::mt19937_64& g, bool zero_constant = false) {
  for (size_t i = 0; i < j.c.size(); ++i) j.c[i] = small_rat(g);
  if (zero_constant) j.c[0] = 0;
}

// result = sum_{b1..bs} (d_{b1..bs} sym) * prod thins[i][bi]: the derivatives
// land on the vertex symbol only, never on the attached evaluations.
Jet sym_contract(const Jet& sym, const std::vector<std::vector<Jet>>& thins,
                 size_t i, int d) {
  if (i == thins.size()) return sym;
  Jet out(sym.sp);
  for (int b = 0; b < d; ++b)
    out = out + sym_contract(partial(sym, b), thins, i + 1, d) * thins[i][b];
  return out;
}

std::vector<Jet> eval_tree(const TreePtr& t, const std::map<int, int>& assign,
                           const FieldData& F) {
  const int d = F.d;
  std::vector<std::vector<Jet>> thick, thin;
  for (const auto& c : t->children) {
    auto sub = eval_tree(c.sub, assign, F);
    (c.edge == EdgeKind::Thick ? thick : thin).push_back(std::move(sub));
  }

  std::vector<Jet> out;
  out.reserve(d);
  if (t->kind == VertexKind::Gamma) {
    const auto& A = thick[0];
    const auto& B = thick[1];
    for (int a = 0; a < d; ++a) {
      Jet acc(F.sp);
      for (int b = 0; b < d; ++b)
        for (int c2 = 0; c2 < d; ++c2)
          acc = acc + sym_contract(F.Gamma[a][b][c2], thin, 0, d) * A[b] * B[c2];
      out.push_back(Rational(2) * acc);
    }
    return out;
  }

  const std::vector<Jet>* base = nullptr;
  if (t->kind == VertexKind::Noise) base = &F.sigma[assign.at(t->color)];
  else if (t->kind == VertexKind::Delta) base = &F.h;
  else throw std::invalid_argument("upsilon: Alpha vertices are not evaluable");

  for (int a = 0; a < d; ++a) out.push_back(sym_contract((*base)[a], thin, 0, d));
  return out;
}

void collect_colors(const TreePtr& t, std::set<int>& colors) {
  if (t->kind == VertexKind::Noise) colors.insert(t->color);
  for (const auto& c : t->children) collect_colors(c.sub, colors);
}

}  // namespace

FieldData random_field_data(int d, int m, int order, unsigned long long seed,
                            bool with_K) {
  FieldData F;
  F.d = d;
  F.m = m;
  F.sp = JetSpace::get(d, order);
  std::mt19937_64 g(seed);

  F.sigma.assign(m, std::vector<Jet>(d, Jet(F.sp)));
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < d; ++a) fill_jet(F.sigma[i][a], g);

  F.Gamma.assign(d, std::vector<std::vector<Jet>>(d, std::vector<Jet>(d, Jet(F.sp))));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = b; c < d; ++c) {
        fill_jet(F.Gamma[a][b][c], g);
        if (c != b) F.Gamma[a][c][b] = F.Gamma[a][b][c];
      }

  F.h.assign(d, Jet(F.sp));
  for (int a = 0; a < d; ++a) fill_jet(F.h[a], g);

  if (with_K) {
    F.K.assign(d, std::vector<Jet>(d, Jet(F.sp)));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) fill_jet(F.K[a][b], g);
  }
  return F;
}

std::vector<Jet> upsilon(const TreePtr& t, const FieldData& data) {
  std::set<int> colorset;
  collect_colors(t, colorset);
  std::vector<int> colors(colorset.begin(), colorset.end());

  std::vector<Jet> out(data.d, Jet(data.sp));
  std::vector<int> pick(colors.size(), 0);
  while (true) {
    std::map<int, int> assign;
    for (size_t i = 0; i < colors.size(); ++i) assign[colors[i]] = pick[i];
    auto val = eval_tree(t, assign, data);
    for (int a = 0; a < data.d; ++a) out[a] = out[a] + val[a];

    int i = static_cast<int>(pick.size()) - 1;
    while (i >= 0 && pick[i] == data.m - 1) pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return out;
}

std::vector<Jet> upsilon(const LinComb& x, const FieldData& data) {
  std::vector<Jet> out(data.d, Jet(data.sp));
  for (const auto& [t, c] : x.terms) {
    auto val = upsilon(t, data);
    for (int a = 0; a < data.d; ++a) out[a] = out[a] + c * val[a];
  }
  return out;
}

std::vector<Jet> covariant_vf(
    const std::vector<Jet>& X, const std::vector<Jet>& Y,
    const std::vector<std::vector<std::vector<Jet>>>& Gamma) {
  const int d = static_cast<int>(X.size());
  std::vector<Jet> out;
  out.reserve(d);
  for (int a = 0; a < d; ++a) {
    Jet acc(X[0].sp);
    for (int b = 0; b < d; ++b) {
      acc = acc + X[b] * partial(Y[a], b);
      for (int c = 0; c < d; ++c) acc = acc + Gamma[a][b][c] * X[b] * Y[c];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

namespace {

std::vector<std::vector<Jet>> jet_matrix_inverse(
    const std::vector<std::vector<Jet>>& M) {
  const int d = static_cast<int>(M.size());
  const JetSpacePtr sp = M[0][0].sp;
  std::vector<std::vector<Jet>> A = M;
  std::vector<std::vector<Jet>> inv(d, std::vector<Jet>(d, Jet(sp)));
  for (int i = 0; i < d; ++i) inv[i][i] = Jet(sp, 1);

  for (int col = 0; col < d; ++col) {
    int piv = -1;
    for (int r = col; r < d; ++r)
      if (A[r][col].c[0] != 0) { piv = r; break; }
    if (piv < 0) throw std::invalid_argument("jet matrix not invertible");
    std::swap(A[piv], A[col]);
    std::swap(inv[piv], inv[col]);
    const Jet rec = reciprocal(A[col][col]);
    for (int c = 0; c < d; ++c) {
      A[col][c] = A[col][c] * rec;
      inv[col][c] = inv[col][c] * rec;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      const Jet f = A[r][col];
      bool nonzero = false;
      for (const auto& x : f.c) nonzero |= (x != 0);
      if (!nonzero) continue;
      for (int c = 0; c < d; ++c) {
        A[r][c] = A[r][c] - f * A[col][c];
        inv[r][c] = inv[r][c] - f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

FieldData diffeo_act(const std::vector<Jet>& phi, const FieldData& data) {
  const int d = data.d;
  if (static_cast<int>(phi.size()) != d)
    throw std::invalid_argument("diffeo_act: dimension mismatch");

  std::vector<Jet> phi_dev = phi;
  for (auto& p : phi_dev) p.c[0] = 0;

  std::vector<std::vector<Jet>> J(d, std::vector<Jet>(d, Jet(data.sp)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) J[i][j] = partial(phi[i], j);

  const auto psi = invert_map(phi_dev);
  const auto Jinv = jet_matrix_inverse(J);

  FieldData out;
  out.d = d;
  out.m = data.m;
  out.sp = data.sp;

  auto push_vector = [&](const std::vector<Jet>& v) {
    std::vector<Jet> res;
    res.reserve(d);
    for (int a = 0; a < d; ++a) {
      Jet acc(data.sp);
      for (int b = 0; b < d; ++b) acc = acc + J[a][b] * v[b];
      res.push_back(compose(acc, psi));
    }
    return res;
  };

  out.sigma.reserve(data.m);
  for (const auto& s : data.sigma) out.sigma.push_back(push_vector(s));
  out.h = push_vector(data.h);

  // Pre-composition connection coefficients:
  //   M[a][b][c] = J[a][mu] Gamma[mu][b][c] - d_b d_c phi[a],
  // contracted with two inverse Jacobians.
  std::vector<std::vector<std::vector<Jet>>> M(
      d, std::vector<std::vector<Jet>>(d, std::vector<Jet>(d, Jet(data.sp))));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        Jet acc(data.sp);
        for (int mu = 0; mu < d; ++mu) acc = acc + J[a][mu] * data.Gamma[mu][b][c];
        M[a][b][c] = acc - partial(partial(phi[a], b), c);
      }
  // Contract c with Jinv, then b.
  std::vector<std::vector<std::vector<Jet>>> M1 = M;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int z = 0; z < d; ++z) {
        Jet acc(data.sp);
        for (int c = 0; c < d; ++c) acc = acc + M[a][b][c] * Jinv[c][z];
        M1[a][b][z] = std::move(acc);
      }
  out.Gamma.assign(d, std::vector<std::vector<Jet>>(d, std::vector<Jet>(d, Jet(data.sp))));
  for (int a = 0; a < d; ++a)
    for (int e = 0; e < d; ++e)
      for (int z = 0; z < d; ++z) {
        Jet acc(data.sp);
        for (int b = 0; b < d; ++b) acc = acc + M1[a][b][z] * Jinv[b][e];
        out.Gamma[a][e][z] = compose(acc, psi);
      }

  if (!data.K.empty()) {
    out.K.assign(d, std::vector<Jet>(d, Jet(data.sp)));
    for (int a = 0; a < d; ++a)
      for (int z = 0; z < d; ++z) {
        Jet acc(data.sp);
        for (int b = 0; b < d; ++b)
          for (int c = 0; c < d; ++c)
            acc = acc + J[a][b] * data.K[b][c] * Jinv[c][z];
        out.K[a][z] = compose(acc, psi);
      }
  }
  return out;
}

std::vector<Jet> random_diffeo(int d, int order, unsigned long long seed) {
  const JetSpacePtr sp = JetSpace::get(d, order);
  std::mt19937_64 g(seed);
  std::vector<Jet> phi(d, Jet(sp));
  for (int i = 0; i < d; ++i) {
    fill_jet(phi[i], g, /*zero_constant=*/true);
    // Unit-triangular linear part: identity on the diagonal, seeded strictly
    // above, zero below; keeps the map invertible for every seed.
    for (int j = 0; j < d; ++j) {
      std::vector<int> e(d, 0);
      e[j] = 1;
      if (j == i) phi[i].set(e, 1);
      else if (j < i) phi[i].set(e, 0);
    }
  }
  return phi;
}

CheckResult chain_rule_check(const LinComb& x, const FieldData& data,
                             const std::vector<Jet>& phi, int order) {
  const int d = data.d;
  const auto V = upsilon(x, data);
  const FieldData pushed = diffeo_act(phi, data);
  const auto W = upsilon(x, pushed);

  std::vector<Jet> phi_dev = phi;
  for (auto& p : phi_dev) p.c[0] = 0;

  CheckResult res;
  int ord = order;
  for (int a = 0; a < d; ++a) {
    const Jet lhs = compose(W[a], phi_dev);
    Jet rhs(data.sp);
    for (int b = 0; b < d; ++b) rhs = rhs + partial(phi[a], b) * V[b];
    ord = std::min({ord, lhs.valid, rhs.valid});
    if (!agree_to(lhs, rhs, ord)) {
      res.ok = false;
      if (res.witness.empty()) {
        for (size_t i = 0; i < lhs.c.size(); ++i) {
          if (std::accumulate(data.sp->exps[i].begin(), data.sp->exps[i].end(),
                              0) > ord)
            break;
          if (lhs.c[i] != rhs.c[i]) {
            res.witness = fmt::format(
                "component {} at {}: {} vs {}", a,
                fmt::format("[{}]", fmt::join(data.sp->exps[i], ",")),
                rat_str(lhs.c[i]), rat_str(rhs.c[i]));
            break;
          }
        }
      }
    }
  }
  res.order = ord;
  return res;
}

bool infinitesimal_check(const LinComb& x, const FieldData& data, int min_order) {
  const LinComb image = hat_phi_geo(x);
  const auto z = upsilon(image, data);
  int valid = data.sp->R;
  for (const auto& j : z) valid = std::min(valid, j.valid);
  if (valid < min_order)
    throw std::invalid_argument(
        fmt::format("infinitesimal_check: trusted order {} below required {}",
                    valid, min_order));
  for (const auto& j : z)
    if (!j.zero_to(valid)) return false;
  return true;
}

}  // namespace opchris
