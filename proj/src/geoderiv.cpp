#include "opchris/geoderiv.hpp"

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "opchris/parallel.hpp"

namespace opchris {

LinComb thin_graft_sum(const TreePtr& a, const TreePtr& b) {
  LinComb out;
  for (int v = 0; v < b->nvertices; ++v)
    out.add(graft_at(b, v, {EdgeKind::Thin, a}), 1);
  return out;
}

namespace {

// Subsets of {0..n-1} as bitmasks.
inline bool in_mask(unsigned mask, int i) { return (mask >> i) & 1u; }

// Rebuild a vertex from kept children plus extra subtrees.
TreePtr with_children(VertexKind k, int color, const std::vector<Child>& keep,
                      const std::vector<TreePtr>& extra_thin = {}) {
  std::vector<Child> ch = keep;
  for (const auto& t : extra_thin) ch.push_back({EdgeKind::Thin, t});
  return node(k, color, std::move(ch));
}

LinComb hat_rec(const TreePtr& t);

std::map<std::string, LinComb>& hat_cache() {
  static std::map<std::string, LinComb> cache;
  return cache;
}
std::mutex hat_mutex;

// Root-local part of the derivation: the corolla image with the child
// subtrees riding along as plain replacements.
LinComb hat_root(const TreePtr& t) {
  LinComb out;
  const auto& ch = t->children;
  const int n = static_cast<int>(ch.size());

  if (t->kind != VertexKind::Gamma) {
    // White root r with thin subtrees S:
    //   +Delta(r(S\U), U)          for each nonempty U <= S
    //   -r(S\U, Delta(U))          for each U <= S with |U| >= 2
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<Child> keep;
      std::vector<TreePtr> taken;
      for (int i = 0; i < n; ++i)
        (in_mask(mask, i) ? (void)taken.push_back(ch[i].sub)
                          : (void)keep.push_back(ch[i]));
      TreePtr stripped = with_children(t->kind, t->color, keep);
      taken.push_back(stripped);
      out.add(deltav(taken), 1);
      if (taken.size() >= 3) {  // |U| >= 2
        taken.pop_back();
        out.add(with_children(t->kind, t->color, keep, {deltav(taken)}), -1);
      }
    }
    return out;
  }

  // Black root Gamma(A, B; C): children 0,1 thick (canonical order), rest thin.
  const TreePtr A = ch[0].sub;
  const TreePtr B = ch[1].sub;
  std::vector<TreePtr> C;
  for (int i = 2; i < n; ++i) C.push_back(ch[i].sub);
  const int m = static_cast<int>(C.size());

  {
    std::vector<TreePtr> all{A, B};
    all.insert(all.end(), C.begin(), C.end());
    out.add(deltav(all), -2);
  }
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<TreePtr> taken, rest;
    for (int i = 0; i < m; ++i)
      (in_mask(mask, i) ? taken : rest).push_back(C[i]);

    {  // +Delta(Gamma(A,B;C\T), T)
      std::vector<TreePtr> ds = taken;
      ds.push_back(gammav(A, B, rest));
      out.add(deltav(ds), 1);
    }
    {  // -Gamma(Delta(A,T), B; C\T) and the mirrored B term
      std::vector<TreePtr> da = taken;
      da.push_back(A);
      out.add(gammav(deltav(da), B, rest), -1);
      std::vector<TreePtr> db = taken;
      db.push_back(B);
      out.add(gammav(A, deltav(db), rest), -1);
    }
    if (taken.size() >= 2) {  // -Gamma(A, B; Delta(T), C\T)
      std::vector<TreePtr> thin = rest;
      thin.push_back(deltav(taken));
      out.add(gammav(A, B, thin), -1);
    }
  }
  return out;
}

LinComb hat_rec(const TreePtr& t) {
  {
    std::lock_guard<std::mutex> lock(hat_mutex);
    auto it = hat_cache().find(t->code);
    if (it != hat_cache().end()) return it->second;
  }

  LinComb out = hat_root(t);
  // Leibniz recursion: apply in place inside each child subtree.
  for (size_t i = 0; i < t->children.size(); ++i) {
    LinComb sub = hat_rec(t->children[i].sub);
    for (const auto& [s, c] : sub.terms) {
      std::vector<Child> ch = t->children;
      ch[i].sub = s;
      out.add(node(t->kind, t->color, std::move(ch)), c);
    }
  }

  std::lock_guard<std::mutex> lock(hat_mutex);
  return hat_cache().emplace(t->code, std::move(out)).first->second;
}

}  // namespace

LinComb hat_phi_geo(const TreePtr& t) {
  if (t->ndelta != 0 || t->nalpha != 0)
    throw std::invalid_argument("hat_phi_geo: input must be Delta/Alpha-free");
  return hat_rec(t);
}

LinComb hat_phi_geo(const LinComb& x) {
  LinComb out;
  for (const auto& [t, c] : x.terms) {
    LinComb h = hat_phi_geo(t);
    h *= c;
    out += h;
  }
  return out;
}

LinComb phi_geo(const TreePtr& t) {
  // phi = hat + [t, Delta]: the commutator grafts t under a bare Delta minus
  // a bare Delta under every vertex of t.
  LinComb out = hat_phi_geo(t);
  out.add(deltav({t}), 1);
  out -= thin_graft_sum(deltav(), t);
  return out;
}

LinComb nabla(const LinComb& t1, const LinComb& t2) {
  LinComb out;
  for (const auto& [a, ca] : t1.terms)
    for (const auto& [b, cb] : t2.terms) {
      LinComb part = thin_graft_sum(a, b);
      part.add(gammav(a, b), Rational(1) / 2);
      part *= ca * cb;
      out += part;
    }
  return out;
}

LinComb symmetrize_colors(const LinComb& x,
                          const std::vector<std::vector<int>>& blocks) {
  LinComb out;
  for (const auto& perm : block_permutations(blocks)) out += evaluate_on_colors(x, perm);
  return out;
}

KernelResult kernel_basis_geo(const MultiDegree& md,
                              const std::vector<std::vector<int>>& blocks,
                              const EnumBounds& b) {
  const std::vector<TreePtr> reps = enumerate_orbit_reps(md, blocks, b);
  const auto perms = block_permutations(blocks);

  KernelResult res;
  res.domain_orbits = static_cast<int>(reps.size());

  // Columns: domain orbit sums. Rows: canonical representatives appearing in
  // the images (codomain trees carry the extra Delta).
  std::map<std::string, int> row_of;
  SparseMat mat;
  mat.ncols = static_cast<int>(reps.size());

  std::vector<std::vector<std::pair<std::string, Rational>>> cols(reps.size());
  parallel_for(static_cast<int>(reps.size()), [&](int j) {
    const TreePtr& t = reps[j];
    const LinComb h = hat_phi_geo(t);
    LinComb image;
    int stab = 0;
    for (const auto& perm : perms) {
      if (map_colors(t, perm)->code == t->code) ++stab;
      image += evaluate_on_colors(h, perm);
    }
    const Rational scale = Rational(1) / stab;
    for (const auto& [s, c] : image.terms) {
      if (color_canonical(s, blocks)->code != s->code) continue;
      cols[j].push_back({s->code, c * scale});
    }
  });
  for (size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [code, c] : cols[j]) {
      auto [it, fresh] = row_of.emplace(code, static_cast<int>(row_of.size()));
      mat.add(it->second, static_cast<int>(j), c);
    }
  }
  res.codomain_orbits = static_cast<int>(row_of.size());

  const auto kern = kernel_basis(mat);
  res.dim = static_cast<int>(kern.size());
  for (const auto& vec : kern) {
    LinComb elem;
    for (const auto& [j, c] : vec) {
      // Full orbit sum, each distinct member once.
      std::set<std::string> seen;
      for (const auto& perm : perms) {
        TreePtr img = map_colors(reps[j], perm);
        if (seen.insert(img->code).second) elem.add(img, c);
      }
    }
    res.basis.push_back(std::move(elem));
  }
  return res;
}

namespace {

void nabla_words_rec(const MultiDegree& md,
                     std::map<std::string, std::vector<LinComb>>& memo);

// All nonempty proper submultidegrees.
std::vector<MultiDegree> proper_parts(const MultiDegree& md) {
  std::vector<MultiDegree> out{{}};
  for (const auto& [key, count] : md) {
    std::vector<MultiDegree> next;
    for (const auto& part : out) {
      MultiDegree grown = part;
      next.push_back(grown);
      for (int c = 1; c <= count; ++c) {
        ++grown[key];
        next.push_back(grown);
      }
    }
    out = std::move(next);
  }
  std::vector<MultiDegree> filtered;
  for (auto& s : out)
    if (!s.empty() && s != md) filtered.push_back(std::move(s));
  return filtered;
}

void nabla_words_rec(const MultiDegree& md,
                     std::map<std::string, std::vector<LinComb>>& memo) {
  const std::string key = md_str(md);
  if (memo.count(key)) return;
  std::vector<LinComb> out;
  int total = 0;
  for (const auto& [k, v] : md) total += v;
  if (total == 1) {
    out.emplace_back(noise(md.begin()->first));
  } else {
    for (const auto& left : proper_parts(md)) {
      MultiDegree right = md;
      for (const auto& [k, v] : left) {
        right[k] -= v;
        if (right[k] == 0) right.erase(k);
      }
      nabla_words_rec(left, memo);
      nabla_words_rec(right, memo);
      for (const auto& wl : memo[md_str(left)])
        for (const auto& wr : memo[md_str(right)]) out.push_back(nabla(wl, wr));
    }
  }
  memo.emplace(key, std::move(out));
}

}  // namespace

SpanResult covariant_span(const MultiDegree& md,
                          const std::vector<std::vector<int>>& blocks) {
  for (const auto& [k, v] : md)
    if (k < 1) throw std::invalid_argument("covariant_span: colors only");

  std::map<std::string, std::vector<LinComb>> memo;
  nabla_words_rec(md, memo);
  const auto& words = memo[md_str(md)];

  SpanResult res;
  res.words = static_cast<int>(words.size());

  std::map<std::string, int> col_of;
  std::vector<SparseVec> vectors;
  for (const auto& w : words) {
    LinComb sym = symmetrize_colors(w, blocks);
    if (sym.is_zero()) continue;
    SparseVec v;
    for (const auto& [t, c] : sym.terms) {
      auto [it, fresh] = col_of.emplace(t->code, static_cast<int>(col_of.size()));
      v[it->second] = c;
    }
    vectors.push_back(std::move(v));
    res.generators.push_back(std::move(sym));
  }
  res.dim = span_dim(vectors);
  return res;
}

std::vector<LinComb> covariant_catalogue_two_colors() {
  const LinComb a(noise(1)), b(noise(2));
  auto N = [](const LinComb& x, const LinComb& y) { return nabla(x, y); };

  std::vector<LinComb> out;
  out.push_back(N(a, a));
  out.push_back(N(b, N(a, N(b, a))));
  out.push_back(N(a, N(b, N(b, a))));
  out.push_back(N(b, N(b, N(a, a))));
  out.push_back(N(b, N(N(b, a), a)));
  out.push_back(N(N(b, a), N(b, a)));
  out.push_back(N(N(a, b), N(b, a)));
  out.push_back(N(N(b, b), N(a, a)));
  out.push_back(N(N(b, N(b, a)), a));
  out.push_back(N(N(b, N(a, a)), b));
  out.push_back(N(N(N(b, a), a), b));
  out.push_back(N(N(N(b, a), b), a));
  out.push_back(N(a, N(N(b, a), b)));
  out.push_back(N(N(a, N(b, a)), b));
  out.push_back(N(N(N(a, a), b), b));
  out.push_back(N(b, N(N(a, a), b)));
  return out;
}

}  // namespace opchris
