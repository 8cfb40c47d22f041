#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "opchris/trees.hpp"

namespace opchris {

namespace {

MultiDegree md_minus(MultiDegree md, int key, int n = 1) {
  auto it = md.find(key);
  it->second -= n;
  if (it->second == 0) md.erase(it);
  return md;
}

MultiDegree md_diff(const MultiDegree& a, const MultiDegree& b) {
  MultiDegree out = a;
  for (const auto& [k, v] : b) {
    auto it = out.find(k);
    it->second -= v;
    if (it->second == 0) out.erase(it);
  }
  return out;
}

// All submultidegrees of md (componentwise 0..count), empty and full included.
std::vector<MultiDegree> submultidegrees(const MultiDegree& md) {
  std::vector<MultiDegree> out{{}};
  for (const auto& [key, count] : md) {
    std::vector<MultiDegree> next;
    next.reserve(out.size() * (count + 1));
    for (const auto& part : out) {
      next.push_back(part);
      MultiDegree grown = part;
      for (int c = 1; c <= count; ++c) {
        ++grown[key];
        next.push_back(grown);
      }
    }
    out = std::move(next);
  }
  return out;
}

struct Enumerator {
  long long max_trees;
  long long produced = 0;
  std::map<std::string, std::vector<TreePtr>> tree_memo;
  std::map<std::string, std::vector<std::vector<TreePtr>>> forest_memo;

  explicit Enumerator(long long cap) : max_trees(cap) {}

  void bump(size_t n) {
    produced += static_cast<long long>(n);
    if (produced > max_trees)
      throw std::length_error("tree enumeration exceeded max_trees bound");
  }

  const std::vector<TreePtr>& trees(const MultiDegree& md) {
    const std::string key = md_str(md);
    auto hit = tree_memo.find(key);
    if (hit != tree_memo.end()) return hit->second;

    std::vector<TreePtr> out;
    // Root is a single labeled vertex; the rest hangs below on thin edges.
    for (const auto& [c, count] : md) {
      (void)count;
      VertexKind k = c >= 1   ? VertexKind::Noise
                     : c == 0 ? VertexKind::Delta
                              : VertexKind::Alpha;
      MultiDegree rest = md_minus(md, c);
      for (const auto& f : forests(rest, nullptr)) {
        std::vector<Child> ch;
        ch.reserve(f.size());
        for (const auto& t : f) ch.push_back({EdgeKind::Thin, t});
        out.push_back(node(k, c >= 1 ? c : 0, std::move(ch)));
      }
    }
    // Root is black: an unordered thick pair plus a thin forest.
    for (const auto& s1 : submultidegrees(md)) {
      if (s1.empty()) continue;
      MultiDegree rest1 = md_diff(md, s1);
      if (rest1.empty()) continue;  // nothing left for the second thick child
      for (const auto& t1 : trees(s1)) {
        for (const auto& s2 : submultidegrees(rest1)) {
          if (s2.empty()) continue;
          MultiDegree rest2 = md_diff(rest1, s2);
          for (const auto& t2 : trees(s2)) {
            if (t2->code > t1->code) continue;  // unordered pair, keep one order
            for (const auto& f : forests(rest2, nullptr)) {
              std::vector<TreePtr> thin(f.begin(), f.end());
              out.push_back(gammav(t1, t2, std::move(thin)));
            }
          }
        }
      }
    }
    std::sort(out.begin(), out.end(),
              [](const TreePtr& a, const TreePtr& b) { return a->code < b->code; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const TreePtr& a, const TreePtr& b) {
                            return a->code == b->code;
                          }),
              out.end());
    bump(out.size());
    return tree_memo.emplace(key, std::move(out)).first->second;
  }

  // Multisets of trees with total content md, listed as code-nonincreasing
  // sequences; if bound is given the first (largest) code must be <= *bound.
  const std::vector<std::vector<TreePtr>>& forests(const MultiDegree& md,
                                                   const std::string* bound) {
    const std::string key = md_str(md) + "|" + (bound ? *bound : "~");
    auto hit = forest_memo.find(key);
    if (hit != forest_memo.end()) return hit->second;

    std::vector<std::vector<TreePtr>> out;
    if (md.empty()) {
      out.push_back({});
    } else {
      for (const auto& s : submultidegrees(md)) {
        if (s.empty()) continue;
        MultiDegree rest = md_diff(md, s);
        for (const auto& t : trees(s)) {
          if (bound && t->code > *bound) continue;
          for (const auto& f : forests(rest, &t->code)) {
            std::vector<TreePtr> seq;
            seq.reserve(f.size() + 1);
            seq.push_back(t);
            seq.insert(seq.end(), f.begin(), f.end());
            out.push_back(std::move(seq));
          }
        }
      }
    }
    bump(out.size());
    return forest_memo.emplace(key, std::move(out)).first->second;
  }
};

}  // namespace

std::vector<TreePtr> enumerate_trees(const MultiDegree& md, const EnumBounds& b) {
  for (const auto& [k, v] : md) {
    if (v < 0) throw std::invalid_argument("negative multidegree entry");
    if (k == 0 && v > 1) throw std::invalid_argument("at most one Delta");
  }
  Enumerator e(b.max_trees);
  std::vector<TreePtr> out = e.trees(md);
  if (b.negative_only) {
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const TreePtr& t) {
                               return !degree_is_negative(degree(t, b.noise_deg));
                             }),
              out.end());
  }
  return out;
}

std::vector<std::map<int, int>> block_permutations(
    const std::vector<std::vector<int>>& blocks) {
  std::vector<std::map<int, int>> out{{}};
  for (const auto& block : blocks) {
    std::vector<int> perm = block;
    std::sort(perm.begin(), perm.end());
    std::vector<int> sorted = perm;
    std::vector<std::map<int, int>> next;
    do {
      for (const auto& base : out) {
        std::map<int, int> m = base;
        for (size_t i = 0; i < sorted.size(); ++i) m[sorted[i]] = perm[i];
        next.push_back(std::move(m));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out = std::move(next);
  }
  return out;
}

TreePtr color_canonical(const TreePtr& t,
                        const std::vector<std::vector<int>>& blocks) {
  TreePtr best = t;
  for (const auto& perm : block_permutations(blocks)) {
    TreePtr img = map_colors(t, perm);
    if (img->code < best->code) best = img;
  }
  return best;
}

std::vector<TreePtr> enumerate_orbit_reps(const MultiDegree& md,
                                          const std::vector<std::vector<int>>& blocks,
                                          const EnumBounds& b) {
  std::vector<TreePtr> out;
  for (const auto& t : enumerate_trees(md, b)) {
    if (color_canonical(t, blocks)->code == t->code) out.push_back(t);
  }
  return out;
}

std::vector<TreePtr> gaussian_trees_upto(int max_noises, const EnumBounds& b) {
  std::vector<TreePtr> out;
  for (int pairs = 1; 2 * pairs <= max_noises; ++pairs) {
    MultiDegree md;
    std::vector<int> block;
    for (int c = 1; c <= pairs; ++c) {
      md[c] = 2;
      block.push_back(c);
    }
    for (const auto& t : enumerate_orbit_reps(md, {block}, b)) out.push_back(t);
  }
  return out;
}

Int labeled_tree_count(int n) {
  if (n < 1) return 0;
  MultiDegree md{{1, n}};
  EnumBounds b;
  Int total = 0;
  Int fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (const auto& shape : enumerate_trees(md, b)) {
    Int s = symmetry_factor(shape);
    total += fact / s;
  }
  return total;
}

}  // namespace opchris
