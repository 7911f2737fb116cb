#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace bfly {

enum class Side : uint8_t { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

struct VertexRef {
  Side side;
  uint32_t index;
};

inline bool operator==(VertexRef a, VertexRef b) {
  return a.side == b.side && a.index == b.index;
}

struct GraphStats {
  uint64_t n = 0;  // left + right
  uint64_t left = 0;
  uint64_t right = 0;
  uint64_t m = 0;
  double sum_deg_sq_left = 0.0;   // can exceed 64 bits on adversarial inputs
  double sum_deg_sq_right = 0.0;
  uint64_t wedge_count = 0;       // sum over all vertices of C(d, 2)
  uint32_t max_degree = 0;
};

// Immutable bipartite graph. Vertices carry dense per-side indices; the
// external ids seen at load time are retained for serialization. Adjacency
// lists are sorted by dense index and duplicate-free.
class BipartiteGraph {
 public:
  // Normalizes a raw (left_id, right_id) multiset: dense ids assigned in
  // first-seen order per side, duplicate edges dropped, adjacency sorted.
  // An empty edge set yields an empty graph; loaders reject that case.
  static BipartiteGraph from_edges(const std::vector<std::pair<uint64_t, uint64_t>>& edges);

  uint32_t left_count() const { return static_cast<uint32_t>(left_adj_.size()); }
  uint32_t right_count() const { return static_cast<uint32_t>(right_adj_.size()); }
  uint32_t side_count(Side s) const { return s == Side::Left ? left_count() : right_count(); }
  uint64_t vertex_count() const { return uint64_t{left_count()} + right_count(); }
  uint64_t edge_count() const { return m_; }

  const std::vector<uint32_t>& neighbors(Side s, uint32_t i) const {
    return s == Side::Left ? left_adj_[i] : right_adj_[i];
  }
  uint32_t degree(Side s, uint32_t i) const {
    return static_cast<uint32_t>(neighbors(s, i).size());
  }
  uint32_t degree(VertexRef v) const { return degree(v.side, v.index); }

  bool has_edge(uint32_t l, uint32_t r) const;

  // Edges in canonical order: ascending left index, then ascending right
  // index. This is the enumeration sampling and sparsification index into.
  std::pair<uint32_t, uint32_t> edge_at(uint64_t k) const;

  uint64_t external_id(Side s, uint32_t i) const {
    return s == Side::Left ? left_ids_[i] : right_ids_[i];
  }

  // Global vertex enumeration: left block first, then right block.
  VertexRef vertex_at(uint64_t g) const {
    if (g < left_count()) return {Side::Left, static_cast<uint32_t>(g)};
    return {Side::Right, static_cast<uint32_t>(g - left_count())};
  }
  uint64_t global_index(VertexRef v) const {
    return v.side == Side::Left ? v.index : uint64_t{left_count()} + v.index;
  }

 private:
  BipartiteGraph() = default;

  std::vector<std::vector<uint32_t>> left_adj_;
  std::vector<std::vector<uint32_t>> right_adj_;
  std::vector<uint64_t> left_ids_;
  std::vector<uint64_t> right_ids_;
  std::vector<uint64_t> left_offsets_;  // prefix degrees, size left_count()+1
  uint64_t m_ = 0;
};

// Two-column whitespace-separated edge list. Lines starting with '%' or '#'
// and blank lines are skipped; extra tokens after the first two are ignored.
// Throws ParseError with a line number on malformed input and
// EmptyGraphError when no edges survive normalization.
BipartiteGraph load_edge_list(std::istream& in);
BipartiteGraph load_edge_list_file(const std::string& path);

// Emits "% bip" and one "left_id right_id" line per edge in canonical order,
// using the retained external ids. Loading the output back gives an
// isomorphic graph with an equal butterfly count.
void serialize_edge_list(const BipartiteGraph& g, std::ostream& out);

// K_{a,b} with external ids 1..a and 1..b.
BipartiteGraph complete_biclique(uint32_t a, uint32_t b);

// Each of the a*b possible edges kept independently with probability p,
// coins drawn from a seeded generator in row-major order. Vertices that end
// up isolated are dropped by normalization; if no edge survives this throws
// EmptyGraphError.
BipartiteGraph random_bipartite(uint32_t a, uint32_t b, double p, uint64_t seed);

GraphStats compute_stats(const BipartiteGraph& g);

}  // namespace bfly
