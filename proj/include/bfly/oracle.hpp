#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bfly/graph.hpp"

namespace bfly {

// Ground-truth machinery for desk-scale graphs. Everything here enumerates
// by definition and is deliberately independent of the counting paths it is
// used to check; the guards keep it from being pointed at real inputs.

struct OracleGuards {
  uint32_t max_side = 64;           // enumeration limit, per side
  uint64_t max_butterflies = 2000;  // pair classification limit
};

// One 2x2 biclique: both index pairs sorted ascending, so the
// representation is canonical and the enumeration is duplicate-free.
struct Butterfly {
  std::array<uint32_t, 2> left;
  std::array<uint32_t, 2> right;
};

inline bool operator==(const Butterfly& a, const Butterfly& b) {
  return a.left == b.left && a.right == b.right;
}

// How two distinct butterflies can relate, keyed by (shared vertices,
// shared edges). Any other combination is geometrically impossible.
struct PairTypeCounts {
  uint64_t bfly = 0;
  uint64_t p_0v = 0;  // disjoint
  uint64_t p_1v = 0;  // one shared vertex
  uint64_t p_2v = 0;  // two shared vertices, same side, no shared edge
  uint64_t p_1e = 0;  // one shared edge (two shared vertices across sides)
  uint64_t p_1w = 0;  // one shared wedge (three vertices, two edges)

  uint64_t p_V() const { return p_1v + p_2v + p_1e + p_1w; }
  uint64_t p_E() const { return p_1e + p_1w; }
  uint64_t total_pairs() const { return p_0v + p_1v + p_2v + p_1e + p_1w; }
};

struct VarianceBounds {
  double vsamp = 0.0;    // n (bfly + p_V) / 4
  double esamp = 0.0;    // m (bfly + p_E) / 4
  double wsamp = 0.0;    // wedges (bfly + p_1w) / 4
  double espar = 0.0;    // bfly p^-4 + 2 p_1w p^-2 + 2 p_1e p^-1
  double clrspar = 0.0;  // bfly p^-3 + 2 p_1w p^-2 + 2 (p_1e + p_2v) p^-1
};

std::vector<Butterfly> enumerate_butterflies(const BipartiteGraph& g,
                                             const OracleGuards& guards = {});

// Same loops as the enumeration without materializing the list.
uint64_t brute_force_count(const BipartiteGraph& g, const OracleGuards& guards = {});

// Classifies every unordered pair of distinct butterflies. Throws
// InternalError if a pair falls outside the five possible types.
PairTypeCounts classify_pairs(const BipartiteGraph& g, const OracleGuards& guards = {});

// Theoretical one-iteration variance bounds; p is the retention probability
// used for both sparsifier bounds (1/N for the colorful one).
VarianceBounds variance_bounds(const GraphStats& stats, const PairTypeCounts& counts,
                               double p);

}  // namespace bfly
