#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "opchris/symfunc.hpp"
#include "opchris/trees.hpp"

using namespace opchris;

namespace {

// Flattened view for the brute-force automorphism count.
struct Flat {
  std::vector<int> parent;         // -1 for root
  std::vector<EdgeKind> in_edge;   // Thin for root (unused)
  std::vector<VertexKind> kind;
  std::vector<int> color;
};

void flatten(const TreePtr& t, int parent, EdgeKind e, Flat& f) {
  const int me = static_cast<int>(f.parent.size());
  f.parent.push_back(parent);
  f.in_edge.push_back(e);
  f.kind.push_back(t->kind);
  f.color.push_back(t->color);
  for (const auto& c : t->children) flatten(c.sub, me, c.edge, f);
}

// Counts root-fixing bijections preserving parent, incoming edge kind, and
// vertex decoration. Independent of the multinomial bookkeeping under test.
Int brute_force_aut(const TreePtr& t) {
  Flat f;
  flatten(t, -1, EdgeKind::Thin, f);
  const int n = static_cast<int>(f.parent.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int count = 0;
  do {
    if (perm[0] != 0) continue;
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      ok = f.kind[perm[v]] == f.kind[v] && f.color[perm[v]] == f.color[v];
      if (ok && v > 0)
        ok = perm[f.parent[v]] == f.parent[perm[v]] &&
             f.in_edge[perm[v]] == f.in_edge[v];
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

TEST_CASE("canonical construction sorts and validates") {
  CHECK(noise(1, {noise(3), noise(2)})->code == "N1(tN2,tN3)");
  CHECK(gammav(noise(2), noise(1))->code == gammav(noise(1), noise(2))->code);
  CHECK(gammav(noise(1), noise(2), {deltav()})->code == "G(kN1,kN2,tD)");
  CHECK(alphav({alphav(), noise(1)})->code == "A(tA,tN1)");
  CHECK(deltav()->nvertices == 1);
  CHECK(gammav(noise(1), noise(1))->nvertices == 3);

  CHECK_THROWS_AS(noise(0), std::invalid_argument);
  CHECK_THROWS_AS(node(VertexKind::Noise, 1, {{EdgeKind::Thick, noise(2)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(node(VertexKind::Gamma, 0, {{EdgeKind::Thick, noise(1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(deltav({deltav()}), std::invalid_argument);
  CHECK_THROWS_AS(gammav(deltav(), deltav()), std::invalid_argument);
}

TEST_CASE("code and JSON round trips over enumerated trees") {
  for (const MultiDegree& md :
       {MultiDegree{{1, 3}}, MultiDegree{{1, 1}, {2, 1}, {3, 1}},
        MultiDegree{{1, 2}, {0, 1}}, MultiDegree{{1, 1}, {-1, 2}}}) {
    for (const auto& t : enumerate_trees(md)) {
      CHECK(tree_parse(t->code)->code == t->code);
      CHECK(tree_from_json(tree_json(t))->code == t->code);
      CHECK(canonicalize(t)->code == t->code);
    }
  }
  // Parsing canonicalizes unsorted input.
  CHECK(tree_parse("G(kN2,kN1)")->code == "G(kN1,kN2)");
  CHECK(tree_parse("N1(tN3,tN2)")->code == "N1(tN2,tN3)");
  CHECK_THROWS_AS(tree_parse("X"), std::invalid_argument);
  CHECK_THROWS_AS(tree_parse("N1(tN2"), std::invalid_argument);
  CHECK_THROWS_AS(tree_parse("G(kN1)"), std::invalid_argument);
}

TEST_CASE("preorder addressing, grafting, replacement") {
  const TreePtr t = gammav(noise(1), noise(2), {deltav()});
  CHECK(vertex_at(t, 0)->kind == VertexKind::Gamma);
  CHECK(vertex_at(t, 1)->color == 1);
  CHECK(vertex_at(t, 3)->kind == VertexKind::Delta);
  CHECK(graft_at(t, 1, {EdgeKind::Thin, noise(3)})->code ==
        "G(kN1(tN3),kN2,tD)");
  CHECK(replace_at(t, 3, alphav())->code == "G(kN1,kN2,tA)");
  CHECK_THROWS_AS(vertex_at(t, 4), std::out_of_range);
  CHECK(map_colors(t, {{1, 2}, {2, 1}})->code == "G(kN1,kN2,tD)");
  CHECK(map_colors(noise(1, {noise(2)}), {{1, 2}, {2, 1}})->code == "N2(tN1)");
}

TEST_CASE("degree bookkeeping") {
  const auto half = [](int num) { return Rational(num) / 2; };
  CHECK(degree(noise(1)) == std::pair{half(-3), Rational(-1)});
  CHECK(degree(noise(1, {noise(2)})) == std::pair{Rational(-1), Rational(-2)});
  CHECK(degree(gammav(noise(1), noise(2))) ==
        std::pair{Rational(-1), Rational(-2)});
  CHECK(degree(noise(1, {noise(2), noise(3)})) ==
        std::pair{half(-1), Rational(-3)});
  CHECK(degree(noise(1), {Rational(-2), Rational(0)}) ==
        std::pair{Rational(-2), Rational(0)});

  CHECK(degree_is_negative({Rational(-1), Rational(5)}));
  CHECK(degree_is_negative({Rational(0), Rational(-1)}));
  CHECK_FALSE(degree_is_negative({Rational(0), Rational(0)}));
  CHECK_FALSE(degree_is_negative({Rational(0), Rational(1)}));
  CHECK_FALSE(degree_is_negative({Rational(1), Rational(-9)}));
}

TEST_CASE("multidegree content") {
  const TreePtr t = gammav(noise(1), noise(2), {deltav()});
  CHECK(multidegree(t) == MultiDegree{{0, 1}, {1, 1}, {2, 1}});
  CHECK(md_str(multidegree(t)) == "{D:1,1:1,2:1}");
  CHECK(multidegree(alphav({alphav(), noise(3)})) ==
        MultiDegree{{-1, 2}, {3, 1}});
}

TEST_CASE("symmetry factor matches brute-force automorphism count") {
  CHECK(symmetry_factor(gammav(noise(1), noise(1))) == 2);
  CHECK(symmetry_factor(gammav(noise(1), noise(2))) == 1);
  CHECK(symmetry_factor(noise(1, {noise(2), noise(2)})) == 2);
  CHECK(symmetry_factor(alphav({alphav(), alphav()})) == 2);

  int checked = 0;
  for (const MultiDegree& md :
       {MultiDegree{{1, 3}}, MultiDegree{{1, 4}}, MultiDegree{{1, 2}, {2, 2}},
        MultiDegree{{1, 2}, {0, 1}}, MultiDegree{{1, 1}, {-1, 3}},
        MultiDegree{{1, 2}, {-1, 2}}}) {
    for (const auto& t : enumerate_trees(md)) {
      if (t->nvertices > 6) continue;
      CAPTURE(t->code);
      CHECK(symmetry_factor(t) == brute_force_aut(t));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("enumeration counts over distinct labels") {
  const auto labeled = [](int n) {
    MultiDegree md;
    for (int i = 1; i <= n; ++i) md[i] = 1;
    return enumerate_trees(md);
  };
  CHECK(labeled(1).size() == 1);
  CHECK(labeled(2).size() == 3);
  CHECK(labeled(3).size() == 24);
  CHECK(labeled(4).size() == 319);

  const auto three = labeled(3);
  CHECK(std::is_sorted(three.begin(), three.end(),
                       [](const TreePtr& a, const TreePtr& b) {
                         return a->code < b->code;
                       }));
  for (const auto& t : three)
    CHECK(multidegree(t) == MultiDegree{{1, 1}, {2, 1}, {3, 1}});
}

TEST_CASE("labeled counts agree with the generating-function oracle") {
  const auto coeffs = tree_egf_solve(7);  // t^1..t^7
  Int fact = 1;
  for (int n = 1; n <= 7; ++n) {
    fact *= n;
    const Rational expected = Rational(fact) * coeffs[n - 1];
    CHECK(expected == Rational(labeled_tree_count(n)));
  }
  CHECK(labeled_tree_count(1) == 1);
  CHECK(labeled_tree_count(2) == 3);
  CHECK(labeled_tree_count(3) == 24);
  CHECK(labeled_tree_count(4) == 319);
  CHECK(labeled_tree_count(5) == 5935);
}

TEST_CASE("negative-degree filter and enumeration cap") {
  MultiDegree two{{1, 1}, {2, 1}};
  EnumBounds keep;
  keep.negative_only = true;
  CHECK(enumerate_trees(two, keep).size() == 3);  // default exponents

  EnumBounds drop;
  drop.negative_only = true;
  drop.noise_deg = {Rational(-1), Rational(0)};  // every 2-noise tree hits 0
  CHECK(enumerate_trees(two, drop).empty());

  MultiDegree three{{1, 1}, {2, 1}, {3, 1}};
  EnumBounds capped;
  capped.max_trees = 5;
  CHECK_THROWS_AS(enumerate_trees(three, capped), std::length_error);

  CHECK_THROWS_AS(enumerate_trees(MultiDegree{{1, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_trees(MultiDegree{{0, 2}}), std::invalid_argument);
}

TEST_CASE("color symmetry helpers") {
  CHECK(block_permutations({{1, 2}}).size() == 2);
  CHECK(block_permutations({{1, 2}, {3, 4}}).size() == 4);
  CHECK(block_permutations({{1, 2, 3}}).size() == 6);

  const TreePtr t = noise(2, {noise(1)});
  CHECK(color_canonical(t, {{1, 2}})->code == "N1(tN2)");
  CHECK(color_canonical(t, {{1}, {2}})->code == "N2(tN1)");

  // One pair of identified colors: the two-noise catalogue.
  const auto reps2 = enumerate_orbit_reps({{1, 2}}, {{1}});
  CHECK(reps2.size() == 2);
}

TEST_CASE("gaussian catalogue sizes") {
  const auto one_pair = gaussian_trees_upto(2);
  CHECK(one_pair.size() == 2);  // chain and the two-argument black corolla

  const auto reps22 = enumerate_orbit_reps({{1, 2}, {2, 2}}, {{1, 2}});
  CHECK(reps22.size() == 52);

  const auto all4 = gaussian_trees_upto(4);
  CHECK(all4.size() == 54);
  int two_colors = 0;
  for (const auto& t : all4) {
    const auto md = multidegree(t);
    if (md.size() == 2) ++two_colors;
    for (const auto& [c, k] : md) {
      CHECK(c >= 1);
      CHECK(k == 2);
    }
  }
  CHECK(two_colors == 52);
}
