#pragma once

#include <cstdint>

#include "bfly/graph.hpp"

namespace bfly {

// Butterflies containing vertex v: sum of C(|N(v) ∩ N(w)|, 2) over the
// distance-2 neighborhood of v. Scratch is operation-local, so calls are
// safe to run concurrently. Costs O(sum of degrees over N(v)).
uint64_t count_per_vertex(const BipartiteGraph& g, VertexRef v);

// Butterflies containing edge (l, r): for each other neighbor x of the
// higher-degree endpoint, the common neighborhood of x and the lower-degree
// endpoint contributes all its members except the shared edge's endpoint.
// Iterates from the lower-degree endpoint; costs O(max_degree * d_min + d_max).
// Throws ArgumentError when (l, r) is not an edge.
uint64_t count_per_edge(const BipartiteGraph& g, uint32_t l, uint32_t r);

}  // namespace bfly
