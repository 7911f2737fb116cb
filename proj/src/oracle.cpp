#include "bfly/oracle.hpp"

#include <algorithm>
#include <string>

#include "bfly/checked.hpp"
#include "bfly/errors.hpp"

namespace bfly {

namespace {

void check_side_guard(const BipartiteGraph& g, const OracleGuards& guards) {
  if (g.left_count() > guards.max_side || g.right_count() > guards.max_side)
    throw SizeGuardError("oracle guard: side exceeds " + std::to_string(guards.max_side) +
                         " vertices (raise the guard to override)");
}

std::vector<uint32_t> common_neighbors(const BipartiteGraph& g, uint32_t a, uint32_t b) {
  const auto& na = g.neighbors(Side::Left, a);
  const auto& nb = g.neighbors(Side::Left, b);
  std::vector<uint32_t> out;
  std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                        std::back_inserter(out));
  return out;
}

// Shared entries of two sorted index pairs.
uint32_t shared_of_pair(const std::array<uint32_t, 2>& a, const std::array<uint32_t, 2>& b) {
  uint32_t s = 0;
  for (uint32_t x : a) s += (x == b[0] || x == b[1]) ? 1 : 0;
  return s;
}

}  // namespace

std::vector<Butterfly> enumerate_butterflies(const BipartiteGraph& g,
                                             const OracleGuards& guards) {
  check_side_guard(g, guards);
  std::vector<Butterfly> out;
  for (uint32_t a = 0; a < g.left_count(); ++a)
    for (uint32_t b = a + 1; b < g.left_count(); ++b) {
      auto common = common_neighbors(g, a, b);
      for (size_t i = 0; i < common.size(); ++i)
        for (size_t j = i + 1; j < common.size(); ++j)
          out.push_back({{a, b}, {common[i], common[j]}});
    }
  return out;
}

uint64_t brute_force_count(const BipartiteGraph& g, const OracleGuards& guards) {
  check_side_guard(g, guards);
  uint64_t total = 0;
  for (uint32_t a = 0; a < g.left_count(); ++a)
    for (uint32_t b = a + 1; b < g.left_count(); ++b)
      total = checked_add(total, choose2(common_neighbors(g, a, b).size()));
  return total;
}

PairTypeCounts classify_pairs(const BipartiteGraph& g, const OracleGuards& guards) {
  auto list = enumerate_butterflies(g, guards);
  if (list.size() > guards.max_butterflies)
    throw SizeGuardError("oracle guard: " + std::to_string(list.size()) +
                         " butterflies exceeds pair classification limit of " +
                         std::to_string(guards.max_butterflies) +
                         " (raise the guard to override)");
  PairTypeCounts counts;
  counts.bfly = list.size();
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = i + 1; j < list.size(); ++j) {
      uint32_t sl = shared_of_pair(list[i].left, list[j].left);
      uint32_t sr = shared_of_pair(list[i].right, list[j].right);
      uint32_t sv = sl + sr;
      // Both butterflies are complete bicliques, so an edge is shared
      // exactly when both of its endpoints are: se = sl * sr.
      uint32_t se = sl * sr;
      if (sv == 0) {
        ++counts.p_0v;
      } else if (sv == 1) {
        ++counts.p_1v;
      } else if (sv == 2 && se == 0) {
        ++counts.p_2v;
      } else if (sv == 2 && se == 1) {
        ++counts.p_1e;
      } else if (sv == 3 && se == 2) {
        ++counts.p_1w;
      } else {
        // sv == 4 would mean the butterflies coincide; nothing else exists.
        throw InternalError("impossible butterfly pair: " + std::to_string(sv) +
                            " shared vertices, " + std::to_string(se) + " shared edges");
      }
    }
  return counts;
}

VarianceBounds variance_bounds(const GraphStats& stats, const PairTypeCounts& counts,
                               double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ArgumentError("retention probability must be in (0, 1]");
  VarianceBounds b;
  double bfly = static_cast<double>(counts.bfly);
  double n = static_cast<double>(stats.n);
  double m = static_cast<double>(stats.m);
  double wedges = static_cast<double>(stats.wedge_count);
  b.vsamp = n * (bfly + static_cast<double>(counts.p_V())) / 4.0;
  b.esamp = m * (bfly + static_cast<double>(counts.p_E())) / 4.0;
  b.wsamp = wedges * (bfly + static_cast<double>(counts.p_1w)) / 4.0;
  // The sparsifier lemmas sum covariances over ordered pairs (i != j); our
  // pair counts are unordered, hence the factor 2 on the cross terms.
  double inv = 1.0 / p;
  double p1w2 = 2.0 * static_cast<double>(counts.p_1w);
  double p1e2 = 2.0 * static_cast<double>(counts.p_1e);
  double p2v2 = 2.0 * static_cast<double>(counts.p_2v);
  b.espar = bfly * inv * inv * inv * inv + p1w2 * inv * inv + p1e2 * inv;
  b.clrspar = bfly * inv * inv * inv + p1w2 * inv * inv + (p1e2 + p2v2) * inv;
  return b;
}

}  // namespace bfly
