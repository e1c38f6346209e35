#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hyptype/graph.hpp"

namespace hyptype {

// Small unweighted multigraph to look for as a minor.
struct Pattern {
  std::string name;
  int vertex_count = 0;
  std::vector<std::array<int, 2>> edges;
};

Pattern k4_pattern();
// Three vertices, each pair joined by two edges.
Pattern l3_pattern();
Pattern pattern_from_graph(const WeightedGraph& g, std::string name);

// Branch set per pattern vertex and a host edge per pattern edge.
struct MinorModel {
  std::vector<std::vector<VertexIndex>> branch_sets;
  std::vector<EdgeIndex> edge_map;
};

// Exhaustive search on the underlying graph (weights ignored, host loops only
// used for pattern loops). Throws SizeGuardError when the reduced host has
// more than 14 vertices.
std::optional<MinorModel> find_minor_model(const WeightedGraph& host, const Pattern& pattern);

// Empty string when the model is valid, else the first problem found.
std::string minor_model_violation(const WeightedGraph& host, const Pattern& pattern, const MinorModel& model);
inline bool verify_minor_model(const WeightedGraph& host, const Pattern& pattern, const MinorModel& model) {
  return minor_model_violation(host, pattern, model).empty();
}

// Series-parallel decomposition tree. A leaf is one host edge; a series node
// joins its children end to end through `middle`; a parallel node joins
// children sharing both terminals.
struct SpNode {
  enum class Kind { kLeaf, kSeries, kParallel };
  Kind kind = Kind::kLeaf;
  EdgeIndex edge = -1;
  std::vector<int> children;
  std::array<VertexIndex, 2> terminals{};
  VertexIndex middle = -1;
};

struct SpDecomposition {
  std::vector<SpNode> nodes;
  int root = -1;
  // Human-readable reduction steps in order.
  std::vector<std::string> steps;
};

// Parallel reductions first (earliest pair), then series at the lowest-index
// vertex of degree 2. Returns none when the reductions stall. Throws
// InputError unless g is loopless and 2-connected.
std::optional<SpDecomposition> series_parallel_decomposition(const WeightedGraph& g);
inline bool is_series_parallel(const WeightedGraph& g) { return series_parallel_decomposition(g).has_value(); }

// Results of one minor move (weight decrement, connected edge deletion,
// weighted contraction) with genus >= min_genus, one per isomorphism class.
std::vector<WeightedGraph> connected_minors(const WeightedGraph& g, int min_genus);

}  // namespace hyptype
