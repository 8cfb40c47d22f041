#pragma once

#include <map>
#include <vector>

#include "opchris/rational.hpp"

namespace opchris {

using SparseVec = std::map<int, Rational>;

// Rows of sparse rational entries; rank/kernel by fraction-exact elimination
// with Markowitz pivoting (deterministic tie-breaks, reproducible output).
struct SparseMat {
  int ncols = 0;
  std::vector<SparseVec> rows;

  void add(int row, int col, const Rational& v);
  int nrows() const { return static_cast<int>(rows.size()); }
};

int rank(SparseMat m);

// Basis of {x : M x = 0}; one vector per free column, each normalized so its
// free-column entry is 1. Deterministic order (ascending free column).
std::vector<SparseVec> kernel_basis(SparseMat m);

// Dimension of the span of the given coordinate vectors.
int span_dim(const std::vector<SparseVec>& vectors);

}  // namespace opchris
