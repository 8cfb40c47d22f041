#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "opchris/trees.hpp"

namespace opchris {

struct TreeCodeLess {
  bool operator()(const TreePtr& a, const TreePtr& b) const {
    return a->code < b->code;
  }
};

// Rational linear combination of canonical trees; zero coefficients are never
// stored.
struct LinComb {
  std::map<TreePtr, Rational, TreeCodeLess> terms;

  LinComb() = default;
  LinComb(const TreePtr& t, const Rational& c = 1) { add(t, c); }

  void add(const TreePtr& t, const Rational& c);
  LinComb& operator+=(const LinComb& o);
  LinComb& operator-=(const LinComb& o);
  LinComb& operator*=(const Rational& c);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const LinComb& o) const;  // compares codes, not pointers
  Rational coeff(const TreePtr& t) const;
  std::string str() const;
  std::string json() const;
};

LinComb operator+(LinComb a, const LinComb& b);
LinComb operator-(LinComb a, const LinComb& b);
LinComb operator*(const Rational& c, LinComb a);

// Map every tree of x through f, keeping coefficients (merges collisions).
LinComb map_trees(const LinComb& x,
                  const std::function<TreePtr(const TreePtr&)>& f);

// Insertion at the white vertex with preorder index v of t1: sum over all ways
// of grafting each child edge of v onto a vertex of t2 (black vertices
// included), with t2's root taking v's place and v's incoming edge kind.
// Labels/colors are taken verbatim from both trees.
LinComb insert(const TreePtr& t1, int v, const TreePtr& t2);

// Operadic partial composition for trees over distinct labels: inserts y at
// the vertex of x labeled `label`, relabeling so the result runs over
// 1..(n+m-1) with y occupying the block starting at `label`.
LinComb compose_labeled(const TreePtr& x, int label, const TreePtr& y);

// Bilinear extension of compose_labeled.
LinComb compose_lin(const LinComb& x, int label, const LinComb& y);

// Relabel through `assignment` (labels absent from the map stay fixed),
// canonicalize, merge.
LinComb evaluate_on_colors(const LinComb& x,
                           const std::map<int, int>& assignment);

// The binary-generation identity for black corollas: both sides of
//   S o_1 T_{k-1}  -  sum_{i=1}^{k+1} T_{k-1} o_i S  =  T_k,
// where S is the thin two-vertex tree (root 1, leaf k+2) and T_j the black
// corolla on white inputs 1..j+2. Requires k >= 1.
struct CorollaCertificate {
  LinComb lhs;
  LinComb rhs;
  bool equal = false;
};
CorollaCertificate corolla_from_binaries(int k);

}  // namespace opchris
