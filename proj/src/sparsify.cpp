#include "bfly/sparsify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/rng.hpp"

namespace bfly {

namespace {

double count_retained(const BipartiteGraph& g, const std::vector<bool>& keep) {
  std::vector<std::pair<uint64_t, uint64_t>> edges;
  for (uint64_t k = 0; k < g.edge_count(); ++k) {
    if (!keep[k]) continue;
    auto [l, r] = g.edge_at(k);
    edges.emplace_back(g.external_id(Side::Left, l), g.external_id(Side::Right, r));
  }
  if (edges.empty()) return 0.0;
  return static_cast<double>(exact_count(BipartiteGraph::from_edges(edges)));
}

void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ArgumentError("retention probability must be in (0, 1]");
}

}  // namespace

const char* sparsifier_name(Sparsifier s) {
  return s == Sparsifier::Edge ? "espar" : "clrspar";
}

double edge_sparsify_value(const BipartiteGraph& g, const std::vector<bool>& keep, double p) {
  check_p(p);
  if (keep.size() != g.edge_count()) throw ArgumentError("keep mask size mismatch");
  double inv = 1.0 / p;
  return count_retained(g, keep) * inv * inv * inv * inv;
}

double color_sparsify_value(const BipartiteGraph& g, const std::vector<uint32_t>& colors,
                            uint64_t n_colors) {
  if (n_colors == 0) throw ArgumentError("palette must have at least one color");
  if (colors.size() != g.vertex_count()) throw ArgumentError("color vector size mismatch");
  std::vector<bool> keep(g.edge_count());
  for (uint64_t k = 0; k < g.edge_count(); ++k) {
    auto [l, r] = g.edge_at(k);
    keep[k] = colors[g.global_index({Side::Left, l})] ==
              colors[g.global_index({Side::Right, r})];
  }
  double n = static_cast<double>(n_colors);
  return count_retained(g, keep) * n * n * n;
}

double edge_sparsify_estimate(const BipartiteGraph& g, double p, uint64_t seed) {
  check_p(p);
  std::vector<bool> keep(g.edge_count());
  for (uint64_t k = 0; k < g.edge_count(); ++k)
    keep[k] = unit_double(derive_seed(seed, k)) < p;
  return edge_sparsify_value(g, keep, p);
}

double color_sparsify_estimate(const BipartiteGraph& g, uint64_t n_colors, uint64_t seed) {
  if (n_colors == 0) throw ArgumentError("palette must have at least one color");
  std::vector<uint32_t> colors(g.vertex_count());
  for (uint64_t v = 0; v < g.vertex_count(); ++v)
    colors[v] = static_cast<uint32_t>(bounded_from_bits(derive_seed(seed, v), n_colors));
  return color_sparsify_value(g, colors, n_colors);
}

Estimate sparsify_run(const BipartiteGraph& g, const SparsifyConfig& cfg) {
  if (cfg.trials == 0) throw ArgumentError("trials must be at least 1");
  if (g.edge_count() == 0) throw ArgumentError("cannot sparsify an empty graph");
  Estimate est;
  est.seed = cfg.seed;
  est.iterations_done = cfg.trials;
  auto start = std::chrono::steady_clock::now();
  est.per_group_means.reserve(cfg.trials);
  double sum = 0.0;
  for (uint64_t t = 0; t < cfg.trials; ++t) {
    uint64_t trial_seed = derive_seed(cfg.seed, t);
    double v = cfg.sparsifier == Sparsifier::Edge
                   ? edge_sparsify_estimate(g, cfg.p, trial_seed)
                   : color_sparsify_estimate(g, cfg.colors, trial_seed);
    est.per_group_means.push_back(v);
    sum += v;
  }
  est.value = sum / static_cast<double>(cfg.trials);
  est.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

SparsifyThresholds suggest_p(const GraphStats& stats, double pilot_bfly) {
  if (!(pilot_bfly > 0.0)) throw ArgumentError("pilot estimate must be positive");
  double d = static_cast<double>(stats.max_degree);
  SparsifyThresholds t;
  t.espar_min_p = std::max({std::pow(24.0 / pilot_bfly, 0.25),
                            std::sqrt(24.0 * d / pilot_bfly), 24.0 * d * d / pilot_bfly});
  t.clrspar_min_p = std::max({std::cbrt(32.0 / pilot_bfly),
                              std::sqrt(32.0 * d / pilot_bfly), 32.0 * d * d / pilot_bfly});
  return t;
}

}  // namespace bfly
