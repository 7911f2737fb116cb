#include "bfly/exact.hpp"

#include <vector>

#include "bfly/checked.hpp"

namespace bfly {

SideChoice choose_side(const BipartiteGraph& g) {
  SideChoice c;
  for (uint32_t i = 0; i < g.left_count(); ++i) {
    double d = g.degree(Side::Left, i);
    c.cost_left += d * d;
  }
  for (uint32_t i = 0; i < g.right_count(); ++i) {
    double d = g.degree(Side::Right, i);
    c.cost_right += d * d;
  }
  c.chosen = c.cost_left < c.cost_right ? Side::Right : Side::Left;
  return c;
}

uint64_t exact_count_side(const BipartiteGraph& g, Side iterate) {
  const Side opp = opposite(iterate);
  const uint32_t side_n = g.side_count(iterate);
  std::vector<uint32_t> mult(side_n, 0);  // shared-neighbor multiplicities
  std::vector<uint32_t> touched;
  uint64_t total = 0;
  for (uint32_t v = 0; v < side_n; ++v) {
    for (uint32_t u : g.neighbors(iterate, v)) {
      for (uint32_t w : g.neighbors(opp, u)) {
        if (w >= v) break;  // adjacency is sorted: only anchors below v
        if (mult[w]++ == 0) touched.push_back(w);
      }
    }
    for (uint32_t w : touched) {
      total = checked_add(total, choose2(mult[w]));
      mult[w] = 0;
    }
    touched.clear();
  }
  return total;
}

uint64_t exact_count(const BipartiteGraph& g) {
  return exact_count_side(g, choose_side(g).chosen);
}

}  // namespace bfly
