#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyptype/graph.hpp"

namespace hyptype {

struct GraphIsomorphism {
  std::vector<VertexIndex> vertex_map;
  std::vector<EdgeIndex> edge_map;
};

// Weight-preserving isomorphism of the underlying multigraphs.
std::optional<GraphIsomorphism> find_isomorphism(const WeightedGraph& a, const WeightedGraph& b);
// Additionally length-preserving.
std::optional<GraphIsomorphism> find_isomorphism(const TropicalCurve& a, const TropicalCurve& b);

// Cheap isomorphism invariant, equal for isomorphic weighted graphs. Used to
// bucket candidates before the exact test.
std::string isomorphism_invariant(const WeightedGraph& g);

// All stable weighted graphs of the given genus with at most max_edges
// edges, one per isomorphism class, in a deterministic order.
std::vector<WeightedGraph> enumerate_stable_graphs(int genus, int max_edges);

// Keeps the first member of each isomorphism class, preserving order.
std::vector<WeightedGraph> dedupe_isomorphic(std::vector<WeightedGraph> graphs);

}  // namespace hyptype
