#include "bfly/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#include "bfly/checked.hpp"
#include "bfly/errors.hpp"
#include "bfly/local.hpp"

namespace bfly {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// |N(v) ∩ N(w)| for two same-side vertices, by sorted merge.
uint64_t intersection_size(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  uint64_t count = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (a[i] > b[j]) {
      ++j;
    } else {
      ++count, ++i, ++j;
    }
  }
  return count;
}

// Uniform element of `adj` excluding the (present) value `skip`.
uint32_t draw_excluding(const std::vector<uint32_t>& adj, uint32_t skip, Rng& rng) {
  size_t pos = std::lower_bound(adj.begin(), adj.end(), skip) - adj.begin();
  uint64_t k = rng.uniform_index(adj.size() - 1);
  if (k >= pos) ++k;
  return adj[k];
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::Vertex: return "vertex";
    case Method::Edge: return "edge";
    case Method::Wedge: return "wedge";
    case Method::FastEdge: return "fast-edge";
  }
  return "?";
}

WedgeIndex build_wedge_index(const BipartiteGraph& g) {
  WedgeIndex index;
  uint64_t n = g.vertex_count();
  index.prefix.resize(n + 1, 0);
  for (uint64_t v = 0; v < n; ++v) {
    VertexRef ref = g.vertex_at(v);
    index.prefix[v + 1] = checked_add(index.prefix[v], choose2(g.degree(ref)));
  }
  index.total = index.prefix[n];
  return index;
}

double vertex_sample_value(const BipartiteGraph& g, VertexRef v) {
  return static_cast<double>(count_per_vertex(g, v)) *
         static_cast<double>(g.vertex_count()) / 4.0;
}

double edge_sample_value(const BipartiteGraph& g, uint32_t l, uint32_t r) {
  return static_cast<double>(count_per_edge(g, l, r)) *
         static_cast<double>(g.edge_count()) / 4.0;
}

double wedge_sample_value(const BipartiteGraph& g, uint64_t total_wedges,
                          VertexRef center, uint32_t v, uint32_t w) {
  const Side leaf_side = opposite(center.side);
  uint64_t common = intersection_size(g.neighbors(leaf_side, v), g.neighbors(leaf_side, w));
  // the center itself is always shared, so common >= 1
  return static_cast<double>(common - 1) * static_cast<double>(total_wedges) / 4.0;
}

double fast_edge_pair_value(const BipartiteGraph& g, uint32_t l, uint32_t r,
                            uint32_t other_l, uint32_t other_r) {
  if (!g.has_edge(other_l, other_r)) return 0.0;
  double dl = g.degree(Side::Left, l);
  double dr = g.degree(Side::Right, r);
  return (dl - 1.0) * (dr - 1.0);
}

double vsamp_iteration(const BipartiteGraph& g, Rng& rng) {
  uint64_t v = rng.uniform_index(g.vertex_count());
  return vertex_sample_value(g, g.vertex_at(v));
}

double esamp_iteration(const BipartiteGraph& g, Rng& rng) {
  auto [l, r] = g.edge_at(rng.uniform_index(g.edge_count()));
  return edge_sample_value(g, l, r);
}

double wsamp_iteration(const BipartiteGraph& g, const WedgeIndex& index, Rng& rng) {
  if (index.total == 0) throw NoWedgesError("graph has no wedges to sample");
  uint64_t r = rng.uniform_index(index.total);
  auto it = std::upper_bound(index.prefix.begin(), index.prefix.end(), r);
  uint64_t center_global = static_cast<uint64_t>(it - index.prefix.begin()) - 1;
  VertexRef center = g.vertex_at(center_global);
  const auto& adj = g.neighbors(center.side, center.index);
  // unordered pair of distinct neighbors, uniform
  uint64_t i = rng.uniform_index(adj.size());
  uint64_t j = rng.uniform_index(adj.size() - 1);
  if (j >= i) ++j;
  return wedge_sample_value(g, index.total, center, adj[i], adj[j]);
}

double fast_ebfc_estimate(const BipartiteGraph& g, uint32_t l, uint32_t r,
                          uint64_t repeats, Rng& rng) {
  if (l >= g.left_count() || r >= g.right_count() || !g.has_edge(l, r))
    throw ArgumentError("(l, r) is not an edge");
  if (repeats == 0) throw ArgumentError("repeats must be at least 1");
  uint64_t dl = g.degree(Side::Left, l);
  uint64_t dr = g.degree(Side::Right, r);
  if (dl == 1 || dr == 1) return 0.0;  // no butterfly can contain the edge
  uint64_t hits = 0;
  for (uint64_t t = 0; t < repeats; ++t) {
    uint32_t other_l = draw_excluding(g.neighbors(Side::Right, r), l, rng);
    uint32_t other_r = draw_excluding(g.neighbors(Side::Left, l), r, rng);
    if (g.has_edge(other_l, other_r)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(repeats) *
         static_cast<double>(dl - 1) * static_cast<double>(dr - 1);
}

double fast_esamp_iteration(const BipartiteGraph& g, uint64_t repeats, Rng& rng) {
  auto [l, r] = g.edge_at(rng.uniform_index(g.edge_count()));
  return fast_ebfc_estimate(g, l, r, repeats, rng) *
         static_cast<double>(g.edge_count()) / 4.0;
}

namespace {

struct RunContext {
  const BipartiteGraph& g;
  const EstimatorConfig& cfg;
  const WedgeIndex* wedges;  // built only for Method::Wedge
};

double iterate_once(const RunContext& ctx, uint64_t index) {
  Rng rng = Rng::stream(ctx.cfg.seed, index);
  switch (ctx.cfg.method) {
    case Method::Vertex: return vsamp_iteration(ctx.g, rng);
    case Method::Edge: return esamp_iteration(ctx.g, rng);
    case Method::Wedge: return wsamp_iteration(ctx.g, *ctx.wedges, rng);
    case Method::FastEdge: return fast_esamp_iteration(ctx.g, ctx.cfg.fast_edge_repeats, rng);
  }
  throw InternalError("unhandled method");
}

void validate(const BipartiteGraph& g, const EstimatorConfig& cfg) {
  bool has_iters = cfg.iterations > 0 || (cfg.groups > 1 && cfg.group_size > 0);
  bool has_budget = cfg.time_budget_seconds > 0.0;
  if (has_iters == has_budget)
    throw ArgumentError("exactly one of iterations and time budget must be set");
  if (cfg.groups == 0) throw ArgumentError("groups must be at least 1");
  if (cfg.groups > 1 && cfg.groups % 2 == 0)
    throw ArgumentError("median-of-means group count must be odd");
  if (cfg.groups > 1 && has_budget)
    throw ArgumentError("median-of-means needs a fixed iteration count, not a time budget");
  if (cfg.fast_edge_repeats == 0) throw ArgumentError("fast-edge repeats must be at least 1");
  if (g.vertex_count() == 0 || g.edge_count() == 0)
    throw ArgumentError("cannot sample an empty graph");
}

Estimate aggregate(const std::vector<double>& values, const EstimatorConfig& cfg) {
  Estimate est;
  est.seed = cfg.seed;
  est.iterations_done = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  if (cfg.groups == 1) {
    est.value = sum / static_cast<double>(values.size());
    return est;
  }
  uint64_t alpha = values.size() / cfg.groups;
  est.per_group_means.reserve(cfg.groups);
  for (uint64_t t = 0; t < cfg.groups; ++t) {
    double gsum = 0.0;
    for (uint64_t i = t * alpha; i < (t + 1) * alpha; ++i) gsum += values[i];
    est.per_group_means.push_back(gsum / static_cast<double>(alpha));
  }
  est.value = median_of(est.per_group_means);
  return est;
}

}  // namespace

Estimate run_estimator(const BipartiteGraph& g, const EstimatorConfig& cfg,
                       unsigned threads) {
  validate(g, cfg);
  WedgeIndex wedges;
  if (cfg.method == Method::Wedge) {
    wedges = build_wedge_index(g);
    if (wedges.total == 0) throw NoWedgesError("graph has no wedges to sample");
  }
  RunContext ctx{g, cfg, &wedges};
  auto start = Clock::now();

  if (cfg.time_budget_seconds > 0.0) {
    // Sequential; runs at least one iteration even under a tiny budget and
    // consults the clock only every 64 iterations.
    Estimate est;
    est.seed = cfg.seed;
    uint64_t i = 0;
    uint64_t next_checkpoint = 1;
    double running = 0.0;
    bool out_of_time = false;
    while (!out_of_time) {
      running += iterate_once(ctx, i);
      ++i;
      if (cfg.record_trace && i == next_checkpoint) {
        est.trace.push_back({seconds_since(start), i, running / static_cast<double>(i)});
        next_checkpoint *= 2;
      }
      if (i % 64 == 0) out_of_time = seconds_since(start) >= cfg.time_budget_seconds;
    }
    if (cfg.record_trace && est.trace.back().iteration != i)
      est.trace.push_back({seconds_since(start), i, running / static_cast<double>(i)});
    est.iterations_done = i;
    est.value = running / static_cast<double>(i);
    est.elapsed_seconds = seconds_since(start);
    return est;
  }

  uint64_t alpha = cfg.group_size > 0 ? cfg.group_size : cfg.iterations;
  uint64_t total = cfg.groups == 1 ? cfg.iterations : checked_mul(cfg.groups, alpha);
  std::vector<double> values(total);
  std::vector<TracePoint> trace;

  if (threads > 1 && !cfg.record_trace) {
    unsigned nthreads = static_cast<unsigned>(std::min<uint64_t>(threads, total));
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    uint64_t chunk = (total + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      uint64_t lo = t * chunk;
      uint64_t hi = std::min(total, lo + chunk);
      pool.emplace_back([&ctx, &values, lo, hi] {
        for (uint64_t i = lo; i < hi; ++i) values[i] = iterate_once(ctx, i);
      });
    }
    for (auto& th : pool) th.join();
  } else {
    uint64_t next_checkpoint = 1;
    double running = 0.0;
    for (uint64_t i = 1; i <= total; ++i) {
      values[i - 1] = iterate_once(ctx, i - 1);
      running += values[i - 1];
      if (cfg.record_trace && (i == next_checkpoint || i == total)) {
        trace.push_back({seconds_since(start), i, running / static_cast<double>(i)});
        while (next_checkpoint <= i) next_checkpoint *= 2;
      }
    }
  }

  Estimate est = aggregate(values, cfg);
  est.trace = std::move(trace);
  est.elapsed_seconds = seconds_since(start);
  return est;
}

IterationPlan plan_iterations(double variance_bound, double pilot_bfly,
                              double epsilon, double delta) {
  if (!(variance_bound >= 0.0)) throw ArgumentError("variance bound must be nonnegative");
  if (!(pilot_bfly > 0.0)) throw ArgumentError("pilot estimate must be positive");
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("delta must be in (0, 1)");
  IterationPlan plan;
  uint64_t t = static_cast<uint64_t>(std::ceil(8.0 * std::log(1.0 / delta)));
  if (t < 1) t = 1;
  if (t > 1 && t % 2 == 0) ++t;
  plan.groups = t;
  double alpha = std::ceil(32.0 * variance_bound / (epsilon * epsilon * pilot_bfly * pilot_bfly));
  plan.group_size = alpha < 1.0 ? 1 : static_cast<uint64_t>(alpha);
  return plan;
}

}  // namespace bfly
