#pragma once

#include <string>
#include <vector>

#include "opchris/symfunc.hpp"

namespace opchris {

// Component specification: for each block, (degree j >= 2, multiplicity n_j).
// Induces the group Sigma_{n_2} x ... , k = sum n_j twisted variables, and the
// target monomial prod (block-j variables)^j.
struct BlockSpec {
  std::vector<std::pair<int, int>> blocks;  // (j, n_j), j strictly increasing

  int var_count() const;    // k
  int total_degree() const; // sum j * n_j
  Int group_order() const;  // prod n_j!
  std::string str() const;  // e.g. "U_{2,2,3}"
};

// One conjugacy class of the product group: a partition per block.
using ClassTuple = std::vector<Partition>;
std::vector<ClassTuple> conjugacy_classes(const BlockSpec& spec);
Int class_size(const BlockSpec& spec, const ClassTuple& cls);

// e_i(sigma a) for i = 0..k as polynomials in t_1..t_k: expand
// prod over cycles (X^len - prod t over the cycle) and read
// e_i = (-1)^i [X^{k-i}]. Variables are blocked consecutively.
std::vector<Poly> twisted_elementaries(const BlockSpec& spec,
                                       const ClassTuple& cls);

// Substitute the twisted elementaries into F (e-basis; e_i = 0 for i > k
// dropped before expansion) and extract the target-monomial coefficient.
Rational class_coefficient(const SymFunc& F_e, const BlockSpec& spec,
                           const ClassTuple& cls);

// (1/|G|) sum over classes of |class| * class_coefficient; asserts the
// average is a non-negative integer.
Int invariant_dim(const SymFunc& F_e, const BlockSpec& spec);

// Per-component row of the reports below.
struct DimRow {
  BlockSpec spec;
  Int dim;
};

// sum_{k=1..n} dim for all-2 blocks of multiplicity k.
Int gaussian_total(int n, std::vector<DimRow>* table = nullptr);

// Sum over all BlockSpecs with parts >= 2 and total degree <= n.
Int cumulant_total(int n, std::vector<DimRow>* table = nullptr);

}  // namespace opchris
