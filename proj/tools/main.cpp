// bfly: butterfly counting toolkit. One structured record per run on
// stdout (JSON lines, schema in README), diagnostics on stderr.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bfly/errors.hpp"
#include "bfly/exact.hpp"
#include "bfly/graph.hpp"
#include "bfly/local.hpp"
#include "bfly/oracle.hpp"
#include "bfly/sampling.hpp"
#include "bfly/sparsify.hpp"

namespace {

using bfly::BipartiteGraph;
using bfly::Side;

// %.17g round-trips doubles; integral values come out without a decimal
// point, which keeps counts readable.
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// Minimal one-line JSON object writer; fields appear in insertion order so
// records are byte-stable.
class JsonRecord {
 public:
  void add(const std::string& k, uint64_t v) { slot(k) += std::to_string(v); }
  void add(const std::string& k, double v) { slot(k) += fmt_double(v); }
  void add(const std::string& k, const std::string& v) {
    slot(k) += '"' + json_escape(v) + '"';
  }
  void add(const std::string& k, const char* v) { add(k, std::string(v)); }
  void add_raw(const std::string& k, const std::string& body) { slot(k) += body; }
  std::string str() const { return "{" + body_ + "}"; }

 private:
  std::string& slot(const std::string& k) {
    if (!body_.empty()) body_ += ',';
    body_ += '"' + json_escape(k) + "\":";
    return body_;
  }
  std::string body_;
};

struct CommonOpts {
  uint64_t seed = 0;
  unsigned threads = 1;
  bool human = false;
  bool no_timing = false;  // print elapsed fields as 0 for byte-stable output
};

struct Report {
  std::string command;
  std::string method;
  double estimate = 0.0;
  std::optional<double> exact;
  std::optional<double> relative_error_pct;
  uint64_t iterations = 0;
  double elapsed_seconds = 0.0;
  uint64_t seed = 0;
  std::map<std::string, std::string> params;
  std::vector<double> per_trial;
  std::vector<bfly::TracePoint> trace;
  bool has_trace = false;
};

// relative_error_pct is defined only against a positive truth.
void attach_error(Report& r) {
  if (r.exact && *r.exact > 0.0)
    r.relative_error_pct = 100.0 * std::fabs(r.estimate - *r.exact) / *r.exact;
}

std::string trace_json(const Report& r, const CommonOpts& opts) {
  std::string out = "[";
  for (size_t i = 0; i < r.trace.size(); ++i) {
    const auto& t = r.trace[i];
    JsonRecord p;
    p.add("iteration", t.iteration);
    p.add("elapsed_seconds", opts.no_timing ? 0.0 : t.elapsed_seconds);
    p.add("estimate", t.estimate);
    if (r.exact && *r.exact > 0.0)
      p.add("relative_error_pct", 100.0 * std::fabs(t.estimate - *r.exact) / *r.exact);
    if (i) out += ',';
    out += p.str();
  }
  return out + "]";
}

void print_report(const Report& r, const CommonOpts& opts) {
  double elapsed = opts.no_timing ? 0.0 : r.elapsed_seconds;
  if (opts.human) {
    std::cout << "command: " << r.command << '\n';
    std::cout << "method: " << r.method << '\n';
    std::cout << "estimate: " << fmt_double(r.estimate) << '\n';
    if (r.exact) std::cout << "exact: " << fmt_double(*r.exact) << '\n';
    if (r.relative_error_pct)
      std::cout << "relative error: " << fmt_double(*r.relative_error_pct) << "%\n";
    std::cout << "iterations: " << r.iterations << '\n';
    std::cout << "elapsed: " << fmt_double(elapsed) << " s\n";
    std::cout << "seed: " << r.seed << '\n';
    for (const auto& [k, v] : r.params) std::cout << k << ": " << v << '\n';
    if (!r.per_trial.empty()) {
      std::cout << "per-trial:";
      for (double v : r.per_trial) std::cout << ' ' << fmt_double(v);
      std::cout << '\n';
    }
    if (r.has_trace) {
      std::cout << "trace:\n";
      for (const auto& t : r.trace) {
        std::cout << "  iter " << t.iteration << ": estimate " << fmt_double(t.estimate);
        if (r.exact && *r.exact > 0.0)
          std::cout << " (err "
                    << fmt_double(100.0 * std::fabs(t.estimate - *r.exact) / *r.exact)
                    << "%)";
        std::cout << '\n';
      }
    }
    return;
  }
  JsonRecord rec;
  rec.add("record", std::string("run"));
  rec.add("command", r.command);
  rec.add("method", r.method);
  rec.add("estimate", r.estimate);
  if (r.exact) rec.add("exact", *r.exact);
  if (r.relative_error_pct) rec.add("relative_error_pct", *r.relative_error_pct);
  rec.add("iterations", r.iterations);
  rec.add("elapsed_seconds", elapsed);
  rec.add("seed", r.seed);
  std::string params;
  for (const auto& [k, v] : r.params) {
    if (!params.empty()) params += ',';
    params += '"' + json_escape(k) + "\":\"" + json_escape(v) + '"';
  }
  rec.add_raw("params", "{" + params + "}");
  if (!r.per_trial.empty()) {
    std::string arr = "[";
    for (size_t i = 0; i < r.per_trial.size(); ++i) {
      if (i) arr += ',';
      arr += fmt_double(r.per_trial[i]);
    }
    rec.add_raw("per_trial", arr + "]");
  }
  if (r.has_trace) rec.add_raw("trace", trace_json(r, opts));
  std::cout << rec.str() << '\n';
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- commands --------------------------------------------------------------

void cmd_stats(const std::string& path, const CommonOpts& opts) {
  auto g = bfly::load_edge_list_file(path);
  auto s = bfly::compute_stats(g);
  if (opts.human) {
    std::cout << "vertices: " << s.n << " (" << s.left << " left, " << s.right
              << " right)\n";
    std::cout << "edges: " << s.m << '\n';
    std::cout << "sum deg^2 left: " << fmt_double(s.sum_deg_sq_left) << '\n';
    std::cout << "sum deg^2 right: " << fmt_double(s.sum_deg_sq_right) << '\n';
    std::cout << "wedges: " << s.wedge_count << '\n';
    std::cout << "max degree: " << s.max_degree << '\n';
    return;
  }
  JsonRecord rec;
  rec.add("record", std::string("stats"));
  rec.add("n", s.n);
  rec.add("left", s.left);
  rec.add("right", s.right);
  rec.add("m", s.m);
  rec.add("sum_deg_sq_left", s.sum_deg_sq_left);
  rec.add("sum_deg_sq_right", s.sum_deg_sq_right);
  rec.add("wedges", s.wedge_count);
  rec.add("max_degree", uint64_t{s.max_degree});
  std::cout << rec.str() << '\n';
}

void cmd_exact(const std::string& path, const std::string& side, const CommonOpts& opts) {
  auto g = bfly::load_edge_list_file(path);
  auto start = std::chrono::steady_clock::now();
  uint64_t count = 0;
  std::string chosen;
  if (side == "auto") {
    auto choice = bfly::choose_side(g);
    count = bfly::exact_count_side(g, choice.chosen);
    chosen = bfly::side_name(choice.chosen);
  } else {
    Side s = side == "left" ? Side::Left : Side::Right;
    count = bfly::exact_count_side(g, s);
    chosen = side;
  }
  Report r;
  r.command = "exact";
  r.method = "exact";
  r.estimate = static_cast<double>(count);
  r.exact = r.estimate;
  r.iterations = 1;
  r.elapsed_seconds = elapsed_since(start);
  r.seed = opts.seed;
  r.params["side"] = chosen;
  attach_error(r);
  print_report(r, opts);
}

struct SampleArgs {
  std::string path;
  std::string method;
  uint64_t iterations = 0;
  double time_budget = 0.0;
  uint64_t groups = 1;
  uint64_t group_size = 0;
  uint64_t fast_repeats = 1000;
  bool exact_for_error = false;
  std::optional<double> exact;
  bool trace = false;
};

bfly::Method parse_method(const std::string& name) {
  if (name == "vertex") return bfly::Method::Vertex;
  if (name == "edge") return bfly::Method::Edge;
  if (name == "wedge") return bfly::Method::Wedge;
  if (name == "fast-edge") return bfly::Method::FastEdge;
  throw bfly::ArgumentError("unknown method '" + name + "'");
}

void cmd_sample(const SampleArgs& a, const CommonOpts& opts) {
  auto g = bfly::load_edge_list_file(a.path);
  bfly::EstimatorConfig cfg;
  cfg.method = parse_method(a.method);
  cfg.iterations = a.iterations;
  cfg.time_budget_seconds = a.time_budget;
  cfg.seed = opts.seed;
  cfg.groups = a.groups;
  cfg.group_size = a.group_size;
  cfg.fast_edge_repeats = a.fast_repeats;
  cfg.record_trace = a.trace;
  auto est = bfly::run_estimator(g, cfg, opts.threads);
  Report r;
  r.command = "sample";
  r.method = a.method;
  r.estimate = est.value;
  r.iterations = est.iterations_done;
  r.elapsed_seconds = est.elapsed_seconds;
  r.seed = est.seed;
  if (a.exact) r.exact = *a.exact;
  else if (a.exact_for_error) r.exact = static_cast<double>(bfly::exact_count(g));
  r.params["groups"] = std::to_string(a.groups);
  if (a.group_size) r.params["group_size"] = std::to_string(a.group_size);
  if (a.time_budget > 0.0) r.params["time_budget_seconds"] = fmt_double(a.time_budget);
  if (cfg.method == bfly::Method::FastEdge)
    r.params["fast_repeats"] = std::to_string(a.fast_repeats);
  r.trace = std::move(est.trace);
  r.has_trace = a.trace;
  attach_error(r);
  print_report(r, opts);
}

struct SparsifyArgs {
  std::string path;
  std::string method;
  double p = 0.5;
  uint64_t colors = 2;
  uint64_t trials = 1;
  bool exact_for_error = false;
  std::optional<double> exact;
};

void cmd_sparsify(const SparsifyArgs& a, const CommonOpts& opts) {
  auto g = bfly::load_edge_list_file(a.path);
  bfly::SparsifyConfig cfg;
  cfg.sparsifier = a.method == "edge" ? bfly::Sparsifier::Edge : bfly::Sparsifier::Color;
  cfg.p = a.p;
  cfg.colors = a.colors;
  cfg.seed = opts.seed;
  cfg.trials = a.trials;
  Report r;
  r.command = "sparsify";
  r.method = bfly::sparsifier_name(cfg.sparsifier);
  if (a.exact) r.exact = *a.exact;
  else if (a.exact_for_error) r.exact = static_cast<double>(bfly::exact_count(g));

  // The concentration lemmas want p above a threshold that depends on the
  // unknown count; advise on stderr, never fail.
  double effective_p = cfg.sparsifier == bfly::Sparsifier::Edge
                           ? cfg.p
                           : 1.0 / static_cast<double>(cfg.colors);
  if (r.exact && *r.exact > 0.0) {
    auto t = bfly::suggest_p(bfly::compute_stats(g), *r.exact);
    double min_p = cfg.sparsifier == bfly::Sparsifier::Edge ? t.espar_min_p
                                                            : t.clrspar_min_p;
    if (effective_p <= min_p)
      std::cerr << "advisory: retention " << fmt_double(effective_p)
                << " is at or below the lemma threshold " << fmt_double(min_p) << '\n';
  } else {
    std::cerr << "advisory: lemma threshold on p not checked (no pilot count; "
                 "pass --exact-for-error or --exact)\n";
  }

  auto est = bfly::sparsify_run(g, cfg);
  r.estimate = est.value;
  r.iterations = est.iterations_done;
  r.elapsed_seconds = est.elapsed_seconds;
  r.seed = est.seed;
  r.per_trial = std::move(est.per_group_means);
  if (cfg.sparsifier == bfly::Sparsifier::Edge) r.params["p"] = fmt_double(cfg.p);
  else r.params["colors"] = std::to_string(cfg.colors);
  r.params["trials"] = std::to_string(cfg.trials);
  attach_error(r);
  print_report(r, opts);
}

void cmd_generate(const std::string& kind, const std::vector<std::string>& params,
                  const std::string& out_path, const CommonOpts& opts) {
  auto parse_u32 = [](const std::string& s) {
    size_t pos = 0;
    unsigned long v = std::stoul(s, &pos);
    if (pos != s.size() || v > 0xffffffffUL)
      throw bfly::ArgumentError("bad size '" + s + "'");
    return static_cast<uint32_t>(v);
  };
  BipartiteGraph g = [&] {
    if (kind == "biclique") {
      if (params.size() != 2)
        throw bfly::ArgumentError("biclique takes two sizes: <left> <right>");
      return bfly::complete_biclique(parse_u32(params[0]), parse_u32(params[1]));
    }
    if (params.size() != 3)
      throw bfly::ArgumentError("random takes <left> <right> <p>");
    double prob = 0.0;
    try {
      prob = std::stod(params[2]);
    } catch (const std::exception&) {
      throw bfly::ArgumentError("bad probability '" + params[2] + "'");
    }
    return bfly::random_bipartite(parse_u32(params[0]), parse_u32(params[1]), prob,
                                  opts.seed);
  }();
  std::ofstream out(out_path);
  if (!out) throw bfly::Error("cannot write '" + out_path + "'");
  bfly::serialize_edge_list(g, out);
  if (!out.flush()) throw bfly::Error("write failed for '" + out_path + "'");
  if (opts.human) {
    std::cout << "wrote " << g.edge_count() << " edges (" << g.left_count() << " x "
              << g.right_count() << ") to " << out_path << '\n';
    return;
  }
  JsonRecord rec;
  rec.add("record", std::string("generate"));
  rec.add("kind", kind);
  rec.add("left", uint64_t{g.left_count()});
  rec.add("right", uint64_t{g.right_count()});
  rec.add("m", g.edge_count());
  rec.add("seed", opts.seed);
  rec.add("path", out_path);
  std::cout << rec.str() << '\n';
}

void cmd_local(const std::string& path, const std::string& vertex,
               const std::vector<uint32_t>& edge, const CommonOpts& opts) {
  auto g = bfly::load_edge_list_file(path);
  auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = "local";
  r.seed = opts.seed;
  r.iterations = 1;
  if (!vertex.empty()) {
    auto colon = vertex.find(':');
    if (colon == std::string::npos)
      throw bfly::ArgumentError("--vertex wants side:index, e.g. left:0");
    std::string side = vertex.substr(0, colon);
    if (side != "left" && side != "right")
      throw bfly::ArgumentError("side must be left or right");
    uint32_t idx = 0;
    try {
      idx = static_cast<uint32_t>(std::stoul(vertex.substr(colon + 1)));
    } catch (const std::exception&) {
      throw bfly::ArgumentError("bad vertex index in '" + vertex + "'");
    }
    Side s = side == "left" ? Side::Left : Side::Right;
    if (idx >= g.side_count(s)) throw bfly::ArgumentError("vertex index out of range");
    r.method = "local-vertex";
    r.estimate = static_cast<double>(bfly::count_per_vertex(g, {s, idx}));
    r.params["vertex"] = vertex;
  } else {
    r.method = "local-edge";
    r.estimate = static_cast<double>(bfly::count_per_edge(g, edge[0], edge[1]));
    r.params["edge"] = std::to_string(edge[0]) + " " + std::to_string(edge[1]);
  }
  r.elapsed_seconds = elapsed_since(start);
  print_report(r, opts);
}

void cmd_pairs(const std::string& path, double p, uint64_t colors, uint32_t max_side,
               uint64_t max_butterflies, const CommonOpts& opts) {
  auto g = bfly::load_edge_list_file(path);
  bfly::OracleGuards guards;
  guards.max_side = max_side;
  guards.max_butterflies = max_butterflies;
  auto counts = bfly::classify_pairs(g, guards);
  auto bounds = bfly::variance_bounds(bfly::compute_stats(g), counts, p);
  auto clr_bounds =
      bfly::variance_bounds(bfly::compute_stats(g), counts, 1.0 / static_cast<double>(colors));
  if (opts.human) {
    std::cout << "butterflies: " << counts.bfly << '\n';
    std::cout << "pairs: 0v " << counts.p_0v << ", 1v " << counts.p_1v << ", 2v "
              << counts.p_2v << ", 1e " << counts.p_1e << ", 1w " << counts.p_1w << '\n';
    std::cout << "p_V: " << counts.p_V() << ", p_E: " << counts.p_E() << '\n';
    std::cout << "bounds: vsamp " << fmt_double(bounds.vsamp) << ", esamp "
              << fmt_double(bounds.esamp) << ", wsamp " << fmt_double(bounds.wsamp)
              << ", espar(p=" << fmt_double(p) << ") " << fmt_double(bounds.espar)
              << ", clrspar(N=" << colors << ") " << fmt_double(clr_bounds.clrspar)
              << '\n';
    return;
  }
  JsonRecord rec;
  rec.add("record", std::string("pairs"));
  rec.add("bfly", counts.bfly);
  rec.add("p_0v", counts.p_0v);
  rec.add("p_1v", counts.p_1v);
  rec.add("p_2v", counts.p_2v);
  rec.add("p_1e", counts.p_1e);
  rec.add("p_1w", counts.p_1w);
  rec.add("p_V", counts.p_V());
  rec.add("p_E", counts.p_E());
  rec.add("p", p);
  rec.add("colors", colors);
  rec.add("bound_vsamp", bounds.vsamp);
  rec.add("bound_esamp", bounds.esamp);
  rec.add("bound_wsamp", bounds.wsamp);
  rec.add("bound_espar", bounds.espar);
  rec.add("bound_clrspar", clr_bounds.clrspar);
  std::cout << rec.str() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"butterfly counting toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--seed", opts.seed, "RNG seed (default 0)");
  app.add_option("--threads", opts.threads, "worker threads for fixed-count sampling")
      ->check(CLI::Range(1u, 512u));
  app.add_flag("--human", opts.human, "tabular prose instead of structured records");
  app.add_flag("--no-timing", opts.no_timing,
               "print elapsed fields as 0 so output is byte-stable");

  std::string stats_path;
  auto* stats = app.add_subcommand("stats", "degree and wedge statistics");
  stats->add_option("path", stats_path, "edge-list file")->required();

  std::string exact_path, exact_side = "auto";
  auto* exact = app.add_subcommand("exact", "exact butterfly count");
  exact->add_option("path", exact_path)->required();
  exact->add_option("--side", exact_side, "iteration side")
      ->check(CLI::IsMember({"auto", "left", "right"}));

  SampleArgs sa;
  double sample_exact = 0.0;
  auto* sample = app.add_subcommand("sample", "local sampling estimators");
  sample->add_option("path", sa.path)->required();
  sample->add_option("--method", sa.method, "vertex | edge | wedge | fast-edge")
      ->required()
      ->check(CLI::IsMember({"vertex", "edge", "wedge", "fast-edge"}));
  auto* iters_opt = sample->add_option("--iterations", sa.iterations);
  auto* budget_opt =
      sample->add_option("--time-budget", sa.time_budget, "seconds of sampling");
  iters_opt->excludes(budget_opt);
  sample->add_option("--groups", sa.groups, "median-of-means group count");
  sample->add_option("--group-size", sa.group_size, "iterations per group");
  sample->add_option("--fast-repeats", sa.fast_repeats, "inner repeats per edge");
  sample->add_flag("--trace", sa.trace, "record estimate checkpoints");
  auto* sample_efe = sample->add_flag("--exact-for-error", sa.exact_for_error,
                                      "compute the exact count for error reporting");
  auto* sample_exact_opt =
      sample->add_option("--exact", sample_exact, "known exact count for error reporting");
  sample_exact_opt->excludes(sample_efe);

  SparsifyArgs pa;
  double sparsify_exact = 0.0;
  auto* sparsify = app.add_subcommand("sparsify", "one-shot sparsification estimators");
  sparsify->add_option("path", pa.path)->required();
  sparsify->add_option("--method", pa.method, "edge | color")
      ->required()
      ->check(CLI::IsMember({"edge", "color"}));
  sparsify->add_option("--p", pa.p, "edge retention probability");
  sparsify->add_option("--colors", pa.colors, "palette size N");
  sparsify->add_option("--trials", pa.trials, "independent repetitions");
  auto* sparsify_efe = sparsify->add_flag("--exact-for-error", pa.exact_for_error);
  auto* sparsify_exact_opt = sparsify->add_option("--exact", sparsify_exact);
  sparsify_exact_opt->excludes(sparsify_efe);

  std::string gen_kind, gen_out;
  std::vector<std::string> gen_params;
  auto* generate = app.add_subcommand("generate", "write a synthetic edge list");
  generate->add_option("kind", gen_kind)->required()->check(
      CLI::IsMember({"biclique", "random"}));
  generate->add_option("params", gen_params, "biclique: L R; random: L R p");
  generate->add_option("--out", gen_out, "output path")->required();

  std::string local_path, local_vertex;
  std::vector<uint32_t> local_edge;
  auto* local = app.add_subcommand("local", "per-vertex / per-edge counts");
  local->add_option("path", local_path)->required();
  auto* vopt = local->add_option("--vertex", local_vertex, "side:index, e.g. left:0");
  auto* eopt = local->add_option("--edge", local_edge, "dense indices: <left> <right>")
                   ->expected(2);
  vopt->excludes(eopt);

  std::string pairs_path;
  double pairs_p = 0.5;
  uint64_t pairs_colors = 2;
  uint32_t pairs_max_side = 64;
  uint64_t pairs_max_bfly = 2000;
  auto* pairs = app.add_subcommand("pairs", "oracle pair types and variance bounds");
  pairs->add_option("path", pairs_path)->required();
  pairs->add_option("--p", pairs_p, "retention probability for the espar bound");
  pairs->add_option("--colors", pairs_colors, "palette size for the clrspar bound");
  pairs->add_option("--max-side", pairs_max_side, "oracle guard: max side size");
  pairs->add_option("--max-butterflies", pairs_max_bfly,
                    "oracle guard: max butterflies to classify");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*stats) {
      cmd_stats(stats_path, opts);
    } else if (*exact) {
      cmd_exact(exact_path, exact_side, opts);
    } else if (*sample) {
      if (sample_exact_opt->count()) sa.exact = sample_exact;
      cmd_sample(sa, opts);
    } else if (*sparsify) {
      if (sparsify_exact_opt->count()) pa.exact = sparsify_exact;
      cmd_sparsify(pa, opts);
    } else if (*generate) {
      cmd_generate(gen_kind, gen_params, gen_out, opts);
    } else if (*local) {
      if (local_vertex.empty() && local_edge.empty())
        throw bfly::ArgumentError("local needs --vertex or --edge");
      cmd_local(local_path, local_vertex, local_edge, opts);
    } else if (*pairs) {
      cmd_pairs(pairs_path, pairs_p, pairs_colors, pairs_max_side, pairs_max_bfly, opts);
    }
  } catch (const bfly::OverflowError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const bfly::SizeGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << "hint: raise --max-side / --max-butterflies if this is intentional\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
