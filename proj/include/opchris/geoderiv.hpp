#pragma once

#include <vector>

#include "opchris/exactla.hpp"
#include "opchris/operad.hpp"

namespace opchris {

// Sum over vertices v of b of attaching a's root below v by a thin edge
// (b keeps its root).
LinComb thin_graft_sum(const TreePtr& a, const TreePtr& b);

// The derivation part of the geometric action: determined by its generator
// values (single vertex -> 0, thin chain -> Delta corolla, thick corolla ->
// -2 * Delta corolla) and the Leibniz rule through insertion. Input must be
// Delta/Alpha-free; every output term carries exactly one Delta.
LinComb hat_phi_geo(const TreePtr& t);
LinComb hat_phi_geo(const LinComb& x);

// phi_geo = hat_phi_geo + [t, Delta] with [a, b] = a <| b - b <| a and
// a <| b the thin-grafting sum of a onto b.
LinComb phi_geo(const TreePtr& t);

// Covariant derivative on trees: thin-graft t1 onto every vertex of t2, plus
// half the thick corolla on (t1, t2). Bilinear.
LinComb nabla(const LinComb& t1, const LinComb& t2);

// Sum of all block-color permutations applied to x.
LinComb symmetrize_colors(const LinComb& x,
                          const std::vector<std::vector<int>>& blocks);

struct KernelResult {
  int dim = 0;
  std::vector<LinComb> basis;  // invariant elements (full orbit sums)
  int domain_orbits = 0;
  int codomain_orbits = 0;
};

// Kernel of hat_phi_geo on the block-symmetrized span of trees with the given
// multidegree: assembles the exact matrix in the orbit-sum bases and solves.
KernelResult kernel_basis_geo(const MultiDegree& md,
                              const std::vector<std::vector<int>>& blocks,
                              const EnumBounds& b = {});

struct SpanResult {
  int dim = 0;
  std::vector<LinComb> generators;  // symmetrized word expansions
  int words = 0;
};

// All binary nabla-words over single-noise letters with the given
// multidegree, expanded, block-symmetrized, and spanned.
SpanResult covariant_span(const MultiDegree& md,
                          const std::vector<std::vector<int>>& blocks);

// The reference catalogue of iterated covariant derivatives on two noise
// colors: one two-noise word and fifteen four-noise words.
std::vector<LinComb> covariant_catalogue_two_colors();

}  // namespace opchris
