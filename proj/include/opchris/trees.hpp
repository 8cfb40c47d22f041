#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "opchris/rational.hpp"

namespace opchris {

// Decorated rooted trees. White (Noise) vertices carry a color label and any
// number of thin children. Gamma (black) vertices carry exactly two thick
// children -- an unordered pair -- plus any number of thin children. Delta and
// Alpha vertices behave like uncolored white vertices (thin children only);
// a tree holds at most one Delta, while Alphas may repeat.
enum class VertexKind : unsigned char { Noise, Gamma, Delta, Alpha };

// Thick sorts before Thin in the canonical child order.
enum class EdgeKind : unsigned char { Thick = 0, Thin = 1 };

struct TreeNode;
using TreePtr = std::shared_ptr<const TreeNode>;

struct Child {
  EdgeKind edge;
  TreePtr sub;
};

struct TreeNode {
  VertexKind kind;
  int color = 0;  // noise color / operadic label; 0 for Gamma/Delta/Alpha
  std::vector<Child> children;  // canonically sorted
  std::string code;             // canonical identity key
  int nvertices = 1;
  int nalpha = 0;
  int ndelta = 0;
};

// Canonical constructor: sorts children by (edge kind, subtree code) and
// validates the shape invariants above. All TreePtr values in the library are
// built through these, so equal trees always share one code.
TreePtr node(VertexKind k, int color, std::vector<Child> ch = {});
TreePtr noise(int color, std::vector<TreePtr> thin = {});
TreePtr gammav(TreePtr thick1, TreePtr thick2, std::vector<TreePtr> thin = {});
TreePtr deltav(std::vector<TreePtr> thin = {});
TreePtr alphav(std::vector<TreePtr> thin = {});

// Round-trips of the canonical code, e.g. "G(kN1,kN2,tD)".
TreePtr tree_parse(const std::string& code);

// JSON codec: {"kind":"noise","color":1,"children":[{"edge":"thin","tree":...}]}
std::string tree_json(const TreePtr& t);
TreePtr tree_from_json(const std::string& json_text);

// Rebuild bottom-up; idempotent. Only needed for trees assembled by hand from
// foreign data -- node() already canonicalizes.
TreePtr canonicalize(const TreePtr& t);

// Vertices are addressed by preorder position in the canonical form (root = 0).
const TreeNode* vertex_at(const TreePtr& t, int pre);
// Add one child edge at the addressed vertex.
TreePtr graft_at(const TreePtr& t, int pre, const Child& extra);
// Replace the addressed subtree (keeps the incoming edge kind).
TreePtr replace_at(const TreePtr& t, int pre, const TreePtr& sub);

// Recolor noise vertices; colors missing from the map stay fixed.
TreePtr map_colors(const TreePtr& t, const std::map<int, int>& perm);

// |Aut(t)|: product over vertices of multinomials of repeated children.
Int symmetry_factor(const TreePtr& t);

// Degree pair (x, y) meaning x + y*kappa: each noise vertex contributes
// noise_deg, each thin edge +2, each thick edge +1.
std::pair<Rational, Rational> degree(
    const TreePtr& t,
    const std::pair<Rational, Rational>& noise_deg = {Rational(-3) / 2,
                                                      Rational(-1)});
// Negative in the lexicographic sense: x < 0, or x = 0 and y < 0.
bool degree_is_negative(const std::pair<Rational, Rational>& d);

// Noise-color content; key 0 counts Delta vertices, key -1 counts Alphas.
using MultiDegree = std::map<int, int>;
MultiDegree multidegree(const TreePtr& t);
std::string md_str(const MultiDegree& md);

// ---- enumeration ----------------------------------------------------------

struct EnumBounds {
  long long max_trees = 5'000'000;   // hard cap; exceeding it throws
  bool negative_only = false;        // keep only negative-degree trees
  std::pair<Rational, Rational> noise_deg = {Rational(-3) / 2, Rational(-1)};
};

// All canonical trees with exactly the given vertex content, sorted by code.
// Works for operadic labels (all counts 1) and repeated colors alike; key 0
// adds an optional Delta vertex, key -1 adds Alpha vertices.
std::vector<TreePtr> enumerate_trees(const MultiDegree& md,
                                     const EnumBounds& b = {});

// Color permutations generated by the block structure (each block lists
// mutually interchangeable colors), as color->color maps including identity.
std::vector<std::map<int, int>> block_permutations(
    const std::vector<std::vector<int>>& blocks);

// Lexicographically least code over the block permutation group.
TreePtr color_canonical(const TreePtr& t,
                        const std::vector<std::vector<int>>& blocks);

// Orbit representatives of enumerate_trees(md) under the block group.
std::vector<TreePtr> enumerate_orbit_reps(
    const MultiDegree& md, const std::vector<std::vector<int>>& blocks,
    const EnumBounds& b = {});

// Gaussian-mode catalogue: all trees whose noises pair up into <= max_pairs
// identified pairs, modulo permuting the pairs (one representative each).
// max_noises = 2 * max_pairs.
std::vector<TreePtr> gaussian_trees_upto(int max_noises,
                                         const EnumBounds& b = {});

// Number of trees on distinct labels {1..n}, computed as the sum over
// monochrome shapes of n!/|Aut(shape)| (never materializes the labeled set).
Int labeled_tree_count(int n);

}  // namespace opchris
