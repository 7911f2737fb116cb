#include "bfly/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "bfly/checked.hpp"
#include "bfly/errors.hpp"
#include "bfly/rng.hpp"

namespace bfly {

namespace {

uint32_t dense_id(std::unordered_map<uint64_t, uint32_t>& map,
                  std::vector<uint64_t>& ids, uint64_t external) {
  auto it = map.find(external);
  if (it != map.end()) return it->second;
  uint32_t id = static_cast<uint32_t>(ids.size());
  map.emplace(external, id);
  ids.push_back(external);
  return id;
}

}  // namespace

BipartiteGraph BipartiteGraph::from_edges(
    const std::vector<std::pair<uint64_t, uint64_t>>& edges) {
  BipartiteGraph g;
  std::unordered_map<uint64_t, uint32_t> lmap, rmap;
  lmap.reserve(edges.size());
  rmap.reserve(edges.size());
  for (const auto& [le, re] : edges) {
    uint32_t l = dense_id(lmap, g.left_ids_, le);
    uint32_t r = dense_id(rmap, g.right_ids_, re);
    if (l >= g.left_adj_.size()) g.left_adj_.emplace_back();
    if (r >= g.right_adj_.size()) g.right_adj_.emplace_back();
    g.left_adj_[l].push_back(r);
    g.right_adj_[r].push_back(l);
  }
  for (auto& adj : g.left_adj_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  for (auto& adj : g.right_adj_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  g.left_offsets_.resize(g.left_adj_.size() + 1, 0);
  for (size_t i = 0; i < g.left_adj_.size(); ++i)
    g.left_offsets_[i + 1] = g.left_offsets_[i] + g.left_adj_[i].size();
  g.m_ = g.left_offsets_.back();
  return g;
}

bool BipartiteGraph::has_edge(uint32_t l, uint32_t r) const {
  const auto& la = left_adj_[l];
  const auto& ra = right_adj_[r];
  if (la.size() <= ra.size())
    return std::binary_search(la.begin(), la.end(), r);
  return std::binary_search(ra.begin(), ra.end(), l);
}

std::pair<uint32_t, uint32_t> BipartiteGraph::edge_at(uint64_t k) const {
  if (k >= m_) throw ArgumentError("edge index out of range");
  auto it = std::upper_bound(left_offsets_.begin(), left_offsets_.end(), k);
  uint32_t l = static_cast<uint32_t>(it - left_offsets_.begin() - 1);
  return {l, left_adj_[l][k - left_offsets_[l]]};
}

BipartiteGraph load_edge_list(std::istream& in) {
  std::vector<std::pair<uint64_t, uint64_t>> edges;
  std::string line, token;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '%' || line[start] == '#') continue;
    std::istringstream ls(line);
    uint64_t ids[2];
    for (int k = 0; k < 2; ++k) {
      if (!(ls >> token))
        throw ParseError("expected two vertex ids, got " + std::to_string(k), line_no);
      const char* first = token.data();
      const char* last = first + token.size();
      auto [ptr, ec] = std::from_chars(first, last, ids[k]);
      if (ec != std::errc{} || ptr != last)
        throw ParseError("bad vertex id '" + token + "'", line_no);
    }
    edges.emplace_back(ids[0], ids[1]);  // any further tokens are ignored
  }
  if (edges.empty()) throw EmptyGraphError("edge list contains no edges");
  return BipartiteGraph::from_edges(edges);
}

BipartiteGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return load_edge_list(in);
}

void serialize_edge_list(const BipartiteGraph& g, std::ostream& out) {
  out << "% bip\n";
  for (uint32_t l = 0; l < g.left_count(); ++l)
    for (uint32_t r : g.neighbors(Side::Left, l))
      out << g.external_id(Side::Left, l) << ' ' << g.external_id(Side::Right, r) << '\n';
}

BipartiteGraph complete_biclique(uint32_t a, uint32_t b) {
  if (a == 0 || b == 0) throw ArgumentError("biclique sides must be at least 1");
  std::vector<std::pair<uint64_t, uint64_t>> edges;
  edges.reserve(uint64_t{a} * b);
  for (uint32_t i = 1; i <= a; ++i)
    for (uint32_t j = 1; j <= b; ++j) edges.emplace_back(i, j);
  return BipartiteGraph::from_edges(edges);
}

BipartiteGraph random_bipartite(uint32_t a, uint32_t b, double p, uint64_t seed) {
  if (a == 0 || b == 0) throw ArgumentError("side sizes must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("edge probability must be in [0, 1]");
  Rng rng(seed);
  std::vector<std::pair<uint64_t, uint64_t>> edges;
  for (uint32_t i = 1; i <= a; ++i)
    for (uint32_t j = 1; j <= b; ++j)
      if (rng.uniform_unit() < p) edges.emplace_back(i, j);
  if (edges.empty())
    throw EmptyGraphError("random instance came out empty after normalization");
  return BipartiteGraph::from_edges(edges);
}

GraphStats compute_stats(const BipartiteGraph& g) {
  GraphStats s;
  s.left = g.left_count();
  s.right = g.right_count();
  s.n = s.left + s.right;
  s.m = g.edge_count();
  for (uint32_t i = 0; i < g.left_count(); ++i) {
    double d = g.degree(Side::Left, i);
    s.sum_deg_sq_left += d * d;
    s.wedge_count = checked_add(s.wedge_count, choose2(g.degree(Side::Left, i)));
    s.max_degree = std::max(s.max_degree, g.degree(Side::Left, i));
  }
  for (uint32_t i = 0; i < g.right_count(); ++i) {
    double d = g.degree(Side::Right, i);
    s.sum_deg_sq_right += d * d;
    s.wedge_count = checked_add(s.wedge_count, choose2(g.degree(Side::Right, i)));
    s.max_degree = std::max(s.max_degree, g.degree(Side::Right, i));
  }
  return s;
}

}  // namespace bfly
