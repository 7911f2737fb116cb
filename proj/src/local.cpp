#include "bfly/local.hpp"

#include <unordered_map>
#include <unordered_set>

#include "bfly/checked.hpp"
#include "bfly/errors.hpp"

namespace bfly {

uint64_t count_per_vertex(const BipartiteGraph& g, VertexRef v) {
  if (v.index >= g.side_count(v.side)) throw ArgumentError("vertex index out of range");
  const Side other = opposite(v.side);
  std::unordered_map<uint32_t, uint32_t> mult;
  for (uint32_t u : g.neighbors(v.side, v.index))
    for (uint32_t w : g.neighbors(other, u))
      if (w != v.index) ++mult[w];
  uint64_t total = 0;
  for (const auto& [w, c] : mult) total = checked_add(total, choose2(c));
  return total;
}

uint64_t count_per_edge(const BipartiteGraph& g, uint32_t l, uint32_t r) {
  if (l >= g.left_count() || r >= g.right_count())
    throw ArgumentError("edge endpoint out of range");
  if (!g.has_edge(l, r)) throw ArgumentError("(l, r) is not an edge");

  VertexRef a{Side::Left, l}, b{Side::Right, r};
  if (g.degree(a) > g.degree(b)) std::swap(a, b);

  // x ranges over the other endpoint's neighborhood, on a's side.
  const auto& bn = g.neighbors(b.side, b.index);
  std::unordered_set<uint32_t> in_b(bn.begin(), bn.end());

  // mult[x] = |N(a) ∩ N(x)|; the shared neighbor b always contributes one,
  // so each x closes mult[x] - 1 butterflies through the edge (a, b).
  std::unordered_map<uint32_t, uint32_t> mult;
  for (uint32_t w : g.neighbors(a.side, a.index))
    for (uint32_t x : g.neighbors(b.side, w))
      if (x != a.index && in_b.count(x)) ++mult[x];
  uint64_t total = 0;
  for (const auto& [x, c] : mult) total += c - 1;
  return total;
}

}  // namespace bfly
