#pragma once

// Shared fixtures: small named graphs with hand-checkable counts, random
// suites, a from-scratch reference counter, and full-sample-space moment
// helpers for the estimators. Everything here is test-side machinery; it
// reuses only the per-outcome value functions it is supposed to check.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "bfly/checked.hpp"
#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/graph.hpp"
#include "bfly/oracle.hpp"
#include "bfly/sampling.hpp"
#include "bfly/sparsify.hpp"

namespace fixtures {

using bfly::BipartiteGraph;
using bfly::Side;
using bfly::VertexRef;

inline BipartiteGraph make_graph(const std::vector<std::pair<uint64_t, uint64_t>>& edges) {
  return BipartiteGraph::from_edges(edges);
}

inline BipartiteGraph k22() { return bfly::complete_biclique(2, 2); }
inline BipartiteGraph k32() { return bfly::complete_biclique(3, 2); }
inline BipartiteGraph k24() { return bfly::complete_biclique(2, 4); }
inline BipartiteGraph k33() { return bfly::complete_biclique(3, 3); }

// Two vertex-disjoint copies of K_{2,2}; one butterfly each side, so the
// single butterfly pair shares nothing.
inline BipartiteGraph two_k22() {
  return make_graph({{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 3}, {4, 4}});
}

// Six-cycle l1 r1 l2 r2 l3 r3; butterfly-free.
inline BipartiteGraph cycle6() {
  return make_graph({{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}, {1, 3}});
}

// Star K_{1,5}; wedges but no butterflies.
inline BipartiteGraph star15() { return bfly::complete_biclique(1, 5); }

// Path l1 r1 l2 r2; two wedges, no butterfly.
inline BipartiteGraph path4() { return make_graph({{1, 1}, {2, 1}, {2, 2}}); }

// Butterfly-bearing suite for exhaustion and bound sweeps (all n <= 14).
inline std::vector<BipartiteGraph> named_suite() {
  std::vector<BipartiteGraph> out;
  out.push_back(k22());
  out.push_back(k32());
  out.push_back(k24());
  out.push_back(k33());
  out.push_back(two_k22());
  out.push_back(cycle6());
  out.push_back(star15());
  out.push_back(path4());
  return out;
}

// `count` non-empty random graphs, seeds noted from `seed_base` upward.
inline std::vector<BipartiteGraph> random_suite(size_t count, uint32_t max_a, uint32_t max_b,
                                                std::vector<double> ps, uint64_t seed_base) {
  std::vector<BipartiteGraph> out;
  uint64_t seed = seed_base;
  while (out.size() < count) {
    bfly::Rng pick(bfly::derive_seed(seed_base, seed));
    uint32_t a = 1 + static_cast<uint32_t>(pick.uniform_index(max_a));
    uint32_t b = 1 + static_cast<uint32_t>(pick.uniform_index(max_b));
    double p = ps[pick.uniform_index(ps.size())];
    try {
      out.push_back(bfly::random_bipartite(a, b, p, seed));
    } catch (const bfly::EmptyGraphError&) {
      // sparse draw came out empty; take the next seed
    }
    ++seed;
  }
  return out;
}

// ---- independent reference paths ----------------------------------------

// Distance-2 pass without the anchor ordering filter: every same-side pair
// is reached from both ends, so the accumulated total is exactly twice the
// butterfly count. `triples` counts the (v, u, w) visits with w != v, which
// the cost model says is 2 * sum over opposite-side u of C(d_u, 2).
struct ReferencePass {
  uint64_t doubled_total = 0;
  uint64_t triples = 0;
};

inline ReferencePass unordered_exact_pass(const BipartiteGraph& g, Side iterate) {
  const Side opp = opposite(iterate);
  ReferencePass out;
  std::vector<uint32_t> mult(g.side_count(iterate), 0);
  std::vector<uint32_t> touched;
  for (uint32_t v = 0; v < g.side_count(iterate); ++v) {
    for (uint32_t u : g.neighbors(iterate, v))
      for (uint32_t w : g.neighbors(opp, u)) {
        if (w == v) continue;
        ++out.triples;
        if (mult[w]++ == 0) touched.push_back(w);
      }
    for (uint32_t w : touched) {
      out.doubled_total = bfly::checked_add(out.doubled_total, bfly::choose2(mult[w]));
      mult[w] = 0;
    }
    touched.clear();
  }
  return out;
}

inline uint64_t count_containing_vertex(const std::vector<bfly::Butterfly>& list, VertexRef v) {
  uint64_t c = 0;
  for (const auto& b : list) {
    const auto& pair = v.side == Side::Left ? b.left : b.right;
    if (pair[0] == v.index || pair[1] == v.index) ++c;
  }
  return c;
}

inline uint64_t count_containing_edge(const std::vector<bfly::Butterfly>& list, uint32_t l,
                                      uint32_t r) {
  uint64_t c = 0;
  for (const auto& b : list)
    if ((b.left[0] == l || b.left[1] == l) && (b.right[0] == r || b.right[1] == r)) ++c;
  return c;
}

// ---- full-sample-space moments -------------------------------------------

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

namespace detail {

class WeightedMoments {
 public:
  void add(double value, double weight) {
    sum_ += weight * value;
    sum_sq_ += weight * value * value;
    weight_ += weight;
  }
  Moments finish() const {
    double mean = sum_ / weight_;
    return {mean, sum_sq_ / weight_ - mean * mean};
  }

 private:
  double sum_ = 0.0, sum_sq_ = 0.0, weight_ = 0.0;
};

}  // namespace detail

inline Moments vsamp_exhaustion(const BipartiteGraph& g) {
  detail::WeightedMoments m;
  for (uint64_t v = 0; v < g.vertex_count(); ++v)
    m.add(bfly::vertex_sample_value(g, g.vertex_at(v)), 1.0);
  return m.finish();
}

inline Moments esamp_exhaustion(const BipartiteGraph& g) {
  detail::WeightedMoments m;
  for (uint64_t k = 0; k < g.edge_count(); ++k) {
    auto [l, r] = g.edge_at(k);
    m.add(bfly::edge_sample_value(g, l, r), 1.0);
  }
  return m.finish();
}

inline Moments wsamp_exhaustion(const BipartiteGraph& g) {
  bfly::WedgeIndex index = bfly::build_wedge_index(g);
  detail::WeightedMoments m;
  for (uint64_t v = 0; v < g.vertex_count(); ++v) {
    VertexRef center = g.vertex_at(v);
    const auto& adj = g.neighbors(center.side, center.index);
    for (size_t i = 0; i < adj.size(); ++i)
      for (size_t j = i + 1; j < adj.size(); ++j)
        m.add(bfly::wedge_sample_value(g, index.total, center, adj[i], adj[j]), 1.0);
  }
  return m.finish();
}

// Per-edge moments of one Bernoulli probe over the (other_l, other_r) grid.
inline Moments fast_edge_exhaustion(const BipartiteGraph& g, uint32_t l, uint32_t r) {
  detail::WeightedMoments m;
  const auto& rl = g.neighbors(Side::Right, r);
  const auto& lr = g.neighbors(Side::Left, l);
  if (rl.size() == 1 || lr.size() == 1) {
    m.add(0.0, 1.0);
    return m.finish();
  }
  for (uint32_t other_l : rl) {
    if (other_l == l) continue;
    for (uint32_t other_r : lr) {
      if (other_r == r) continue;
      m.add(bfly::fast_edge_pair_value(g, l, r, other_l, other_r), 1.0);
    }
  }
  return m.finish();
}

// Edge choice and probe grid together (the repeats = 1 estimator).
inline Moments fast_esamp_exhaustion(const BipartiteGraph& g) {
  detail::WeightedMoments m;
  double scale = static_cast<double>(g.edge_count()) / 4.0;
  for (uint64_t k = 0; k < g.edge_count(); ++k) {
    auto [l, r] = g.edge_at(k);
    const auto& rl = g.neighbors(Side::Right, r);
    const auto& lr = g.neighbors(Side::Left, l);
    if (rl.size() == 1 || lr.size() == 1) {
      m.add(0.0, 1.0);
      continue;
    }
    double grid = static_cast<double>((rl.size() - 1) * (lr.size() - 1));
    for (uint32_t other_l : rl) {
      if (other_l == l) continue;
      for (uint32_t other_r : lr) {
        if (other_r == r) continue;
        m.add(bfly::fast_edge_pair_value(g, l, r, other_l, other_r) * scale, 1.0 / grid);
      }
    }
  }
  return m.finish();
}

inline Moments espar_exhaustion(const BipartiteGraph& g, double p) {
  uint64_t m_edges = g.edge_count();
  if (m_edges > 20) throw bfly::SizeGuardError("espar exhaustion limited to 20 edges");
  detail::WeightedMoments m;
  std::vector<bool> keep(m_edges);
  for (uint64_t mask = 0; mask < (uint64_t{1} << m_edges); ++mask) {
    double prob = 1.0;
    for (uint64_t k = 0; k < m_edges; ++k) {
      keep[k] = (mask >> k) & 1;
      prob *= keep[k] ? p : 1.0 - p;
    }
    m.add(bfly::edge_sparsify_value(g, keep, p), prob);
  }
  return m.finish();
}

inline Moments clrspar_exhaustion(const BipartiteGraph& g, uint64_t n_colors) {
  uint64_t n = g.vertex_count();
  double total = std::pow(static_cast<double>(n_colors), static_cast<double>(n));
  if (total > 8e6) throw bfly::SizeGuardError("clrspar exhaustion space too large");
  detail::WeightedMoments m;
  std::vector<uint32_t> colors(n, 0);
  while (true) {
    m.add(bfly::color_sparsify_value(g, colors, n_colors), 1.0);
    size_t pos = 0;
    while (pos < n && ++colors[pos] == n_colors) colors[pos++] = 0;
    if (pos == n) break;
  }
  return m.finish();
}

}  // namespace fixtures
