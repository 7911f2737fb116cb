#pragma once

#include <cstdint>

#include "bfly/graph.hpp"

namespace bfly {

struct SideChoice {
  Side chosen = Side::Left;
  double cost_left = 0.0;   // sum of squared left degrees
  double cost_right = 0.0;  // sum of squared right degrees
};

// Iterate over the side whose opposite has the smaller degree-square sum;
// ties go left. Iterating over A costs on the order of the opposite side's
// degree-square sum.
SideChoice choose_side(const BipartiteGraph& g);

// Ordered distance-2 pass anchored at `iterate`: for each anchor v, count
// same-side vertices w < v by shared-neighbor multiplicity c and add C(c, 2).
// Every butterfly has exactly one anchor pair on each side, so the result is
// the full count with no halving and is the same for either side.
uint64_t exact_count_side(const BipartiteGraph& g, Side iterate);

// exact_count_side over choose_side(g).chosen.
uint64_t exact_count(const BipartiteGraph& g);

}  // namespace bfly
