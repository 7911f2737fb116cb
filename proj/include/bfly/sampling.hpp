#pragma once

#include <cstdint>
#include <vector>

#include "bfly/graph.hpp"
#include "bfly/rng.hpp"

namespace bfly {

enum class Method : uint8_t { Vertex, Edge, Wedge, FastEdge };

const char* method_name(Method m);

struct EstimatorConfig {
  Method method = Method::Edge;
  uint64_t iterations = 0;           // exactly one of iterations / time budget
  double time_budget_seconds = 0.0;  // budget mode checks the clock every 64 iterations
  uint64_t seed = 0;
  uint64_t groups = 1;       // median-of-means group count t; odd when > 1
  uint64_t group_size = 0;   // group size alpha; defaults to `iterations`
  uint64_t fast_edge_repeats = 1000;  // inner repeats per sampled edge
  bool record_trace = false;
};

struct TracePoint {
  double elapsed_seconds = 0.0;
  uint64_t iteration = 0;
  double estimate = 0.0;  // prefix mean after `iteration` iterations
};

struct Estimate {
  double value = 0.0;  // mean, or median of group means when groups > 1
  uint64_t iterations_done = 0;
  double elapsed_seconds = 0.0;
  uint64_t seed = 0;
  std::vector<double> per_group_means;  // empty when groups == 1
  std::vector<TracePoint> trace;        // checkpoints at 1, 2, 4, ... and the end
};

// Prefix sums of per-vertex wedge counts C(d, 2) over the global vertex
// order; lets a wedge center be drawn proportionally by binary search.
struct WedgeIndex {
  std::vector<uint64_t> prefix;  // size n + 1
  uint64_t total = 0;
};

WedgeIndex build_wedge_index(const BipartiteGraph& g);

// Deterministic per-outcome values. The seeded iterations below only pick
// an outcome and delegate here, which is also what lets tests average a
// value over the full sample space.
double vertex_sample_value(const BipartiteGraph& g, VertexRef v);
double edge_sample_value(const BipartiteGraph& g, uint32_t l, uint32_t r);
// center plus two distinct dense indices adjacent to it (unordered pair)
double wedge_sample_value(const BipartiteGraph& g, uint64_t total_wedges,
                          VertexRef center, uint32_t v, uint32_t w);
// one Bernoulli probe of edge (l, r): does (other_l, other_r) close a butterfly
double fast_edge_pair_value(const BipartiteGraph& g, uint32_t l, uint32_t r,
                            uint32_t other_l, uint32_t other_r);

// One estimator iteration each; unbiased for the butterfly count.
double vsamp_iteration(const BipartiteGraph& g, Rng& rng);
double esamp_iteration(const BipartiteGraph& g, Rng& rng);
double wsamp_iteration(const BipartiteGraph& g, const WedgeIndex& index, Rng& rng);
double fast_esamp_iteration(const BipartiteGraph& g, uint64_t repeats, Rng& rng);

// Mean of `repeats` Bernoulli probes of (l, r), scaled by
// (d_l - 1)(d_r - 1). Returns 0 without sampling when either endpoint has
// degree 1. Throws ArgumentError when (l, r) is not an edge.
double fast_ebfc_estimate(const BipartiteGraph& g, uint32_t l, uint32_t r,
                          uint64_t repeats, Rng& rng);

// Runs the configured estimator. Iteration i draws from an RNG stream
// derived from (seed, i) and values are reduced in index order, so the
// result is identical for any thread count. Tracing and time-budget runs
// execute on the calling thread; with groups > 1 trace points still carry
// prefix means while the final value is the median of group means.
Estimate run_estimator(const BipartiteGraph& g, const EstimatorConfig& cfg,
                       unsigned threads = 1);

// Chebyshev-style sizing: groups t = ceil(8 ln(1/delta)) rounded up to odd,
// group_size from the one-iteration variance bound and a pilot estimate so
// that one group mean lands within epsilon * pilot with probability 31/32.
struct IterationPlan {
  uint64_t groups = 1;
  uint64_t group_size = 1;
};

IterationPlan plan_iterations(double variance_bound, double pilot_bfly,
                              double epsilon, double delta);

}  // namespace bfly
