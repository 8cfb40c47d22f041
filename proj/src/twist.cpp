#include "opchris/twist.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>

#include "opchris/geoderiv.hpp"

namespace opchris {

namespace {

// Working trees: mutable, non-canonical, with Alphas carrying tags (1..k for
// the input's Alphas by preorder, 0 for the one each rule creates) and marker
// leaves standing in for black subtrees during block-local rewriting.
constexpr int kMarkerBase = 1 << 20;

struct WT {
  VertexKind kind = VertexKind::Noise;
  int color = 0;  // Noise: color or marker id; Alpha: tag
  std::vector<std::pair<EdgeKind, WT>> ch;
};

using Term = std::pair<WT, int>;

WT wt_alpha(int tag, std::vector<std::pair<EdgeKind, WT>> ch = {}) {
  WT w;
  w.kind = VertexKind::Alpha;
  w.color = tag;
  w.ch = std::move(ch);
  return w;
}

WT wt_from_tree(const TreePtr& t, int& next_tag) {
  WT w;
  w.kind = t->kind;
  w.color = (t->kind == VertexKind::Alpha) ? next_tag++ : t->color;
  for (const auto& c : t->children) w.ch.push_back({c.edge, wt_from_tree(c.sub, next_tag)});
  return w;
}

int wt_count(const WT& w) {
  int n = 1;
  for (const auto& [e, c] : w.ch) n += wt_count(c);
  return n;
}

WT wt_graft(const WT& w, int& pre, const std::pair<EdgeKind, WT>& extra) {
  WT out = w;
  if (pre == 0) {
    --pre;
    out.ch.push_back(extra);
    return out;
  }
  --pre;
  for (auto& [e, c] : out.ch) {
    const int sz = wt_count(c);
    if (pre < sz) {
      c = wt_graft(c, pre, extra);
      return out;
    }
    pre -= sz;
  }
  throw std::logic_error("wt_graft: index out of range");
}

// ---- normalization ---------------------------------------------------------

struct NormRes {
  TreePtr t;
  std::vector<int> tags;  // Alpha tags in canonical preorder
};

// Canonicalize, reading off the tag sequence; nullopt when the tree is zero
// (two equal untagged siblings each carrying an odd number of Alphas).
std::optional<NormRes> wt_normalize(const WT& w) {
  struct Piece {
    EdgeKind edge;
    TreePtr t;
    std::vector<int> tags;
  };
  std::vector<Piece> pieces;
  for (const auto& [e, c] : w.ch) {
    auto sub = wt_normalize(c);
    if (!sub) return std::nullopt;
    pieces.push_back({e, std::move(sub->t), std::move(sub->tags)});
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    if (a.edge != b.edge) return a.edge < b.edge;
    if (a.t->code != b.t->code) return a.t->code < b.t->code;
    return a.tags < b.tags;
  });
  // Equal untagged siblings: the swap is an automorphism acting on the
  // orientation by a block transposition; odd alpha counts on both make the
  // element its own negative.
  for (size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i].edge == pieces[i + 1].edge &&
        pieces[i].t->code == pieces[i + 1].t->code &&
        pieces[i].t->nalpha % 2 == 1)
      return std::nullopt;
  }

  NormRes res;
  if (w.kind == VertexKind::Alpha) res.tags.push_back(w.color);
  if (w.kind == VertexKind::Noise && w.color >= kMarkerBase)
    throw std::logic_error("marker leaked into normalization");
  std::vector<Child> ch;
  ch.reserve(pieces.size());
  for (auto& p : pieces) {
    ch.push_back({p.edge, p.t});
    res.tags.insert(res.tags.end(), p.tags.begin(), p.tags.end());
  }
  res.t = node(w.kind, w.kind == VertexKind::Alpha ? 0 : w.color, std::move(ch));
  return res;
}

// Orientation sign: the rule writes its terms in the order (input Alphas
// 1..k, new Alpha last); the canonical basis orders Alphas by preorder.
int orientation_sign(const std::vector<int>& tags, int k) {
  std::vector<int> q;
  q.reserve(tags.size());
  for (int t : tags) q.push_back(t == 0 ? k + 1 : t);
  int inversions = 0;
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = i + 1; j < q.size(); ++j)
      if (q[i] > q[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// ---- block-local (pure) rules ----------------------------------------------

// Local variants at one white/alpha/marker vertex: vertex splittings plus the
// alpha-leaf correction. T runs over subsets of the children.
std::vector<Term> local_variants(const WT& w) {
  std::vector<Term> out;
  {  // alpha leaf at w
    WT leaf = w;
    leaf.ch.push_back({EdgeKind::Thin, wt_alpha(0)});
    out.push_back({std::move(leaf), 1});
  }
  const int n = static_cast<int>(w.ch.size());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::pair<EdgeKind, WT>> taken, keep;
    for (int i = 0; i < n; ++i)
      ((mask >> i) & 1u ? taken : keep).push_back(w.ch[i]);

    if (w.kind == VertexKind::Alpha) {
      // Split one Alpha into two: the new one takes the position, the old one
      // rides on top with its share of the children.
      WT old_top = wt_alpha(w.color, std::move(taken));
      std::vector<std::pair<EdgeKind, WT>> ch = std::move(keep);
      ch.push_back({EdgeKind::Thin, std::move(old_top)});
      out.push_back({wt_alpha(0, std::move(ch)), 1});
    } else {
      {  // alpha above: takes the position, w hangs below with the rest
        WT stay = w;
        stay.ch = keep;
        std::vector<std::pair<EdgeKind, WT>> ch;
        ch.push_back({EdgeKind::Thin, std::move(stay)});
        for (const auto& t : taken) ch.push_back(t);
        out.push_back({wt_alpha(0, std::move(ch)), 1});
      }
      {  // alpha below: hangs under w holding its share
        WT stay = w;
        stay.ch = std::move(keep);
        stay.ch.push_back({EdgeKind::Thin, wt_alpha(0, std::move(taken))});
        out.push_back({std::move(stay), -1});
      }
    }
  }
  return out;
}

// All in-place applications of local_variants across the block tree.
std::vector<Term> walk_block(const WT& w) {
  std::vector<Term> out = local_variants(w);
  for (size_t i = 0; i < w.ch.size(); ++i) {
    for (auto& [r, c] : walk_block(w.ch[i].second)) {
      WT host = w;
      host.ch[i].second = std::move(r);
      out.push_back({std::move(host), c});
    }
  }
  return out;
}

std::vector<Term> pure_terms(const WT& block) {
  std::vector<Term> out = walk_block(block);
  out.push_back({wt_alpha(0, {{EdgeKind::Thin, block}}), -1});
  return out;
}

// ---- marker substitution ----------------------------------------------------

// Replace markers by their black subtrees; children a rule attached to a
// marker graft over every vertex of the substituted subtree (insertion
// semantics), so one input term can fan out.
void substitute(const WT& w, const std::vector<WT>& slots, std::vector<WT>& out) {
  if (w.kind == VertexKind::Noise && w.color >= kMarkerBase) {
    const WT& base = slots[w.color - kMarkerBase];
    std::vector<WT> variants{base};
    for (const auto& extra : w.ch) {
      std::vector<WT> sub_extra;
      substitute(extra.second, slots, sub_extra);
      std::vector<WT> next;
      for (const auto& host : variants) {
        const int nv = wt_count(host);
        for (const auto& es : sub_extra) {
          for (int v = 0; v < nv; ++v) {
            int pre = v;
            next.push_back(wt_graft(host, pre, {extra.first, es}));
          }
        }
      }
      variants = std::move(next);
    }
    for (auto& v : variants) out.push_back(std::move(v));
    return;
  }
  // Cartesian product over children.
  std::vector<WT> acc{WT{w.kind, w.color, {}}};
  for (const auto& [e, c] : w.ch) {
    std::vector<WT> subbed;
    substitute(c, slots, subbed);
    std::vector<WT> next;
    for (const auto& a : acc) {
      for (const auto& s : subbed) {
        WT grown = a;
        grown.ch.push_back({e, s});
        next.push_back(std::move(grown));
      }
    }
    acc = std::move(next);
  }
  for (auto& v : acc) out.push_back(std::move(v));
}

// ---- the twisting differential ---------------------------------------------

// Block view from a white/alpha root: black children become marker leaves.
WT build_block(const WT& w, std::vector<WT>& slots) {
  WT p;
  p.kind = w.kind;
  p.color = w.color;
  for (const auto& [e, c] : w.ch) {
    if (c.kind == VertexKind::Gamma) {
      WT marker;
      marker.kind = VertexKind::Noise;
      marker.color = kMarkerBase + static_cast<int>(slots.size());
      slots.push_back(c);
      p.ch.push_back({e, std::move(marker)});
    } else {
      p.ch.push_back({e, build_block(c, slots)});
    }
  }
  return p;
}

// Marker positions inside the block (preorder), aligned with slot ids.
void marker_positions(const WT& w, int& pre, std::vector<int>& pos) {
  if (w.kind == VertexKind::Noise && w.color >= kMarkerBase) {
    const int id = w.color - kMarkerBase;
    if (id >= static_cast<int>(pos.size())) pos.resize(id + 1, -1);
    pos[id] = pre;
  }
  ++pre;
  for (const auto& [e, c] : w.ch) marker_positions(c, pre, pos);
}

std::vector<Term> dtw_go(const WT& w);

// In-place recursion helper: variants of child i embedded back into w.
void embed_child_terms(const WT& w, size_t i, std::vector<Term>& out) {
  for (auto& [r, c] : dtw_go(w.ch[i].second)) {
    WT host = w;
    host.ch[i].second = std::move(r);
    out.push_back({std::move(host), c});
  }
}

std::vector<Term> dtw_go(const WT& w) {
  std::vector<Term> out;

  if (w.kind == VertexKind::Gamma) {
    // Interaction rule at this black vertex. Children: two thick, rest thin.
    std::vector<int> thick_idx, thin_idx;
    for (size_t i = 0; i < w.ch.size(); ++i)
      (w.ch[i].first == EdgeKind::Thick ? thick_idx : thin_idx).push_back(i);
    const WT& A = w.ch[thick_idx[0]].second;
    const WT& B = w.ch[thick_idx[1]].second;
    const int m = static_cast<int>(thin_idx.size());

    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<std::pair<EdgeKind, WT>> taken, rest;
      for (int i = 0; i < m; ++i) {
        const auto& c = w.ch[thin_idx[i]];
        ((mask >> i) & 1u ? taken : rest).push_back(c);
      }
      {  // alpha above, absorbing T; the black vertex keeps the rest
        WT g;
        g.kind = VertexKind::Gamma;
        g.ch.push_back({EdgeKind::Thick, A});
        g.ch.push_back({EdgeKind::Thick, B});
        for (auto& t : rest) g.ch.push_back(t);
        std::vector<std::pair<EdgeKind, WT>> ch;
        ch.push_back({EdgeKind::Thin, std::move(g)});
        for (auto& t : taken) ch.push_back(t);
        out.push_back({wt_alpha(0, std::move(ch)), 1});
      }
      for (int side = 0; side < 2; ++side) {
        // alpha spliced onto a thick input, holding it plus T
        std::vector<std::pair<EdgeKind, WT>> ach;
        ach.push_back({EdgeKind::Thin, side == 0 ? A : B});
        for (auto& t : taken) ach.push_back(t);
        WT g;
        g.kind = VertexKind::Gamma;
        g.ch.push_back({EdgeKind::Thick, wt_alpha(0, std::move(ach))});
        g.ch.push_back({EdgeKind::Thick, side == 0 ? B : A});
        for (auto& t : rest) g.ch.push_back(t);
        out.push_back({std::move(g), -1});
      }
      if (taken.size() >= 2) {  // alpha hung below, holding T
        WT g;
        g.kind = VertexKind::Gamma;
        g.ch.push_back({EdgeKind::Thick, A});
        g.ch.push_back({EdgeKind::Thick, B});
        for (auto& t : rest) g.ch.push_back(t);
        g.ch.push_back({EdgeKind::Thin, wt_alpha(0, std::move(taken))});
        out.push_back({std::move(g), -1});
      }
    }
    for (size_t i = 0; i < w.ch.size(); ++i) embed_child_terms(w, i, out);
    return out;
  }

  // White/alpha root: rewrite this block, recurse into the black subtrees.
  std::vector<WT> slots;
  WT block = build_block(w, slots);
  for (auto& [pt, c] : pure_terms(block)) {
    std::vector<WT> subbed;
    substitute(pt, slots, subbed);
    for (auto& s : subbed) out.push_back({std::move(s), c});
  }
  std::vector<int> mpos;
  int pre = 0;
  marker_positions(block, pre, mpos);
  for (size_t i = 0; i < slots.size(); ++i) {
    for (auto& [r, c] : dtw_go(slots[i])) {
      // Block intact, slot i replaced by the rewritten subtree, others by
      // their originals.
      std::vector<WT> others = slots;
      others[i] = std::move(r);
      std::vector<WT> subbed;
      substitute(block, others, subbed);
      if (subbed.size() != 1) throw std::logic_error("childless markers expected");
      out.push_back({std::move(subbed[0]), c});
    }
  }
  return out;
}

std::vector<Term> d0_go(const WT& w) {
  std::vector<Term> out;
  if (w.kind == VertexKind::Gamma) {
    std::vector<std::pair<EdgeKind, WT>> ch;
    for (const auto& [e, c] : w.ch) ch.push_back({EdgeKind::Thin, c});
    out.push_back({wt_alpha(0, std::move(ch)), -2});
  }
  for (size_t i = 0; i < w.ch.size(); ++i) {
    for (auto& [r, c] : d0_go(w.ch[i].second)) {
      WT host = w;
      host.ch[i].second = std::move(r);
      out.push_back({std::move(host), c});
    }
  }
  return out;
}

LinComb apply_rule(const LinComb& x, std::vector<Term> (*rule)(const WT&)) {
  LinComb out;
  for (const auto& [t, coeff] : x.terms) {
    if (t->ndelta != 0)
      throw std::invalid_argument("twist differential: Delta-free input expected");
    const int k = t->nalpha;
    int next_tag = 1;
    WT w = wt_from_tree(t, next_tag);
    for (const auto& [term, base] : rule(w)) {
      auto norm = wt_normalize(term);
      if (!norm) continue;
      out.add(norm->t, Rational(base * orientation_sign(norm->tags, k)) * coeff);
    }
  }
  return out;
}

}  // namespace

LinComb d_tw(const LinComb& x) { return apply_rule(x, &dtw_go); }

LinComb d0(const LinComb& x) { return apply_rule(x, &d0_go); }

LinComb d_full(const LinComb& x) { return d_tw(x) + d0(x); }

CorrespondenceReport verify_degree0_correspondence(int max_vertices) {
  CorrespondenceReport rep;
  std::function<TreePtr(const TreePtr&)> alpha_to_delta =
      [&](const TreePtr& t) -> TreePtr {
    std::vector<Child> ch;
    for (const auto& c : t->children) ch.push_back({c.edge, alpha_to_delta(c.sub)});
    return node(t->kind == VertexKind::Alpha ? VertexKind::Delta : t->kind,
                t->color, std::move(ch));
  };

  for (int n = 1; n <= max_vertices; ++n) {
    MultiDegree md;
    for (int c = 1; c <= n; ++c) md[c] = 1;
    for (const auto& t : enumerate_trees(md)) {
      if (t->nvertices > max_vertices) continue;
      ++rep.trees_checked;
      LinComb lhs = map_trees(d_full(LinComb(t)), alpha_to_delta);
      LinComb rhs = hat_phi_geo(t);
      if (!(lhs == rhs)) {
        rep.ok = false;
        if (rep.first_mismatch.empty()) rep.first_mismatch = t->code;
      }
    }
  }
  return rep;
}

}  // namespace opchris
