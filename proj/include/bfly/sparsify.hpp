#pragma once

#include <cstdint>
#include <vector>

#include "bfly/graph.hpp"
#include "bfly/sampling.hpp"

namespace bfly {

enum class Sparsifier : uint8_t { Edge, Color };

const char* sparsifier_name(Sparsifier s);

struct SparsifyConfig {
  Sparsifier sparsifier = Sparsifier::Edge;
  double p = 0.5;       // edge retention probability
  uint64_t colors = 2;  // palette size N for the colorful sparsifier
  uint64_t seed = 0;
  uint64_t trials = 1;
};

// Deterministic cores: count the surviving subgraph exactly and rescale.
// `keep` is indexed by the canonical edge order; `colors` by the global
// vertex order. Exhaustion tests enumerate these directly.
double edge_sparsify_value(const BipartiteGraph& g, const std::vector<bool>& keep, double p);
double color_sparsify_value(const BipartiteGraph& g, const std::vector<uint32_t>& colors,
                            uint64_t n_colors);

// One-shot sparsified counts. Edge coins and vertex colors come from
// counter-based draws keyed on (seed, edge index) and (seed, global vertex),
// so a run is reproducible and order-independent. With p = 1 (or N = 1)
// every edge survives and the exact count comes back unscaled.
double edge_sparsify_estimate(const BipartiteGraph& g, double p, uint64_t seed);
double color_sparsify_estimate(const BipartiteGraph& g, uint64_t n_colors, uint64_t seed);

// `trials` independent one-shot estimates with seeds derived from
// (seed, trial); the mean lands in Estimate.value and the per-trial values
// in Estimate.per_group_means.
Estimate sparsify_run(const BipartiteGraph& g, const SparsifyConfig& cfg);

// Smallest retention probabilities the concentration lemmas ask for, given
// a pilot estimate of the butterfly count. Advisory only; nothing enforces
// them.
struct SparsifyThresholds {
  double espar_min_p = 0.0;    // max((24/b)^(1/4), sqrt(24*D/b), 24*D^2/b)
  double clrspar_min_p = 0.0;  // max((32/b)^(1/3), sqrt(32*D/b), 32*D^2/b)
};

SparsifyThresholds suggest_p(const GraphStats& stats, double pilot_bfly);

}  // namespace bfly
