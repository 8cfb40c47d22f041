#pragma once

#include <string>

#include "opchris/operad.hpp"

namespace opchris {

// Differential graded trees: ordinary trees whose Alpha vertices carry an
// implicit orientation (we fix: Alphas ordered by preorder position in the
// canonical form). Homological degree = -(number of Alphas). A tree in which
// two equal sibling subtrees each hold an odd number of Alphas is the zero
// element (the swap is an odd automorphism); such terms are dropped on
// normalization, with signs tracked through every rule below.

// Twisting part: block-wise vertex splittings of white/alpha vertices,
// alpha-root and alpha-leaf corrections per block, and the interaction terms
// at each black vertex (an alpha absorbing each nonempty subset of its thin
// children from above, spliced onto either thick input, or hung below).
// Annihilates the thick corolla generator.
LinComb d_tw(const LinComb& x);

// Generator-killing part: each black vertex is replaced by an Alpha carrying
// all its children by thin edges, coefficient -2.
LinComb d0(const LinComb& x);

// The full differential d_tw + d0; squares to zero, degree -1.
LinComb d_full(const LinComb& x);

struct CorrespondenceReport {
  bool ok = true;
  int trees_checked = 0;
  std::string first_mismatch;  // canonical code of the first offending tree
};

// On every Alpha/Delta-free labeled tree with <= max_vertices vertices,
// d_full must equal hat_phi_geo after renaming the single Alpha of each image
// term to Delta.
CorrespondenceReport verify_degree0_correspondence(int max_vertices);

}  // namespace opchris
