#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hyptype/rational.hpp"

namespace hyptype {

using VertexIndex = int;
using EdgeIndex = int;
// Edge e owns half-edges 2e and 2e+1; half-edge 2e+k is anchored at ends[k].
using HalfEdge = int;

struct Vertex {
  std::string id;
  int weight = 0;
};

struct Edge {
  std::string id;
  std::array<VertexIndex, 2> ends{};
};

// Connected multigraph (loops and parallel edges allowed) with nonnegative
// integer vertex weights. Immutable once constructed.
class WeightedGraph {
 public:
  // Throws InputError on duplicate ids, dangling ends, negative weights, an
  // empty vertex set or a disconnected underlying graph.
  WeightedGraph(std::vector<Vertex> vertices, std::vector<Edge> edges);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Vertex& vertex(VertexIndex v) const { return vertices_[v]; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }

  VertexIndex anchor(HalfEdge h) const { return edges_[h / 2].ends[h % 2]; }
  static EdgeIndex edge_of(HalfEdge h) { return h / 2; }
  static HalfEdge opposite(HalfEdge h) { return h ^ 1; }
  VertexIndex other_end(EdgeIndex e, VertexIndex v) const;

  bool is_loop(EdgeIndex e) const { return edges_[e].ends[0] == edges_[e].ends[1]; }
  // Half-edges anchored at v in increasing order; a loop contributes two.
  const std::vector<HalfEdge>& half_edges_at(VertexIndex v) const { return incidence_[v]; }
  int valence(VertexIndex v) const { return static_cast<int>(incidence_[v].size()); }
  int total_weight() const;

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  // Throwing lookups.
  VertexIndex vertex_index(std::string_view id) const;
  EdgeIndex edge_index(std::string_view id) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.vertices_.size() == b.vertices_.size() && a.edges_.size() == b.edges_.size() &&
           std::equal(a.vertices_.begin(), a.vertices_.end(), b.vertices_.begin(),
                      [](const Vertex& x, const Vertex& y) { return x.id == y.id && x.weight == y.weight; }) &&
           std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(),
                      [](const Edge& x, const Edge& y) { return x.id == y.id && x.ends == y.ends; });
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<HalfEdge>> incidence_;
  std::unordered_map<std::string, VertexIndex> vertex_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
};

// A weighted graph with a positive exact length on every edge.
class TropicalCurve {
 public:
  TropicalCurve(WeightedGraph graph, std::vector<Rational> lengths);
  static TropicalCurve with_unit_lengths(WeightedGraph graph);

  const WeightedGraph& graph() const { return graph_; }
  const std::vector<Rational>& lengths() const { return lengths_; }
  const Rational& length(EdgeIndex e) const { return lengths_[e]; }
  Rational total_length() const;

  friend bool operator==(const TropicalCurve& a, const TropicalCurve& b) {
    return a.graph_ == b.graph_ && a.lengths_ == b.lengths_;
  }

 private:
  WeightedGraph graph_;
  std::vector<Rational> lengths_;
};

// Where a source edge went in a derived graph.
struct EdgeImage {
  enum class Kind { kEdge, kVertex, kDeleted };
  Kind kind = Kind::kEdge;
  int index = -1;

  friend bool operator==(const EdgeImage&, const EdgeImage&) = default;
};

// Provenance map from a source graph to a graph derived from it by
// contractions and deletions. Total on source edges and vertices.
struct EdgeTrace {
  std::vector<EdgeImage> edge_images;
  std::vector<VertexIndex> vertex_images;

  static EdgeTrace identity(const WeightedGraph& g);
  // This trace followed by `next` (whose source is this trace's target).
  EdgeTrace then(const EdgeTrace& next) const;
};

struct Block {
  enum class Kind { kWeightOneVertex, kTwoConnected };
  Kind kind = Kind::kTwoConnected;
  std::vector<VertexIndex> vertices;
  std::vector<EdgeIndex> edges;

  // b1 of the block; a weight-one vertex block counts as genus 1.
  int genus() const;
};

// Mutable working copy of a curve used to implement contractions and
// deletions while recording provenance. Indices always refer to the source.
class CurveEditor {
 public:
  explicit CurveEditor(const TropicalCurve& source);

  // Weighted contraction. For a non-loop edge the surviving vertex is
  // `survivor` when given (must be one of the two current ends), otherwise
  // the one with the smaller source index.
  void contract(EdgeIndex e, std::optional<VertexIndex> survivor = std::nullopt);
  void erase(EdgeIndex e);
  void set_length(EdgeIndex e, Rational length);

  bool alive(EdgeIndex e) const { return state_[e] == EdgeImage::Kind::kEdge; }
  const Rational& length(EdgeIndex e) const { return lengths_[e]; }
  VertexIndex representative(VertexIndex v) const;
  std::array<VertexIndex, 2> ends(EdgeIndex e) const;
  bool is_loop(EdgeIndex e) const;
  int weight(VertexIndex representative) const { return weights_[representative]; }
  std::vector<EdgeIndex> incident_edges(VertexIndex representative) const;
  int valence(VertexIndex representative) const;
  std::vector<VertexIndex> live_vertices() const;

  // Throws InputError if deletions disconnected the graph.
  std::pair<TropicalCurve, EdgeTrace> finish() const;

 private:
  const TropicalCurve* source_;
  std::vector<VertexIndex> parent_;
  std::vector<int> weights_;
  std::vector<EdgeImage::Kind> state_;
  std::vector<VertexIndex> collapsed_into_;
  std::vector<Rational> lengths_;
};

// Incremental construction helper for fixtures and derived graphs.
class GraphBuilder {
 public:
  VertexIndex add_vertex(std::string id, int weight = 0);
  EdgeIndex add_edge(std::string id, VertexIndex a, VertexIndex b, Rational length = 1);
  EdgeIndex add_edge(std::string id, std::string_view a, std::string_view b, Rational length = 1);

  WeightedGraph graph() const;
  TropicalCurve curve() const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Rational> lengths_;
};

int genus(const WeightedGraph& g);
inline int genus(const TropicalCurve& c) { return genus(c.graph()); }

bool is_stable(const WeightedGraph& g);

// Connectivity of g after removing `removed` (self-contained BFS).
bool is_connected_without(const WeightedGraph& g, std::span<const EdgeIndex> removed);

// Removes weight-0 leaves and suppresses weight-0 bivalent vertices until the
// curve is stable. Requires genus >= 2.
std::pair<TropicalCurve, EdgeTrace> stable_model(const TropicalCurve& c);

std::pair<TropicalCurve, EdgeTrace> contract_edge(const TropicalCurve& c, EdgeIndex e);

// Throws InputError if e is a bridge.
TropicalCurve delete_edge(const TropicalCurve& c, EdgeIndex e);

// Maximal 2-connected subgraphs (bridges and loops are their own blocks),
// then one weight-one-vertex block per unit of weight.
std::vector<Block> blocks(const WeightedGraph& g);

// True when all weights are 0, there are no loops and the graph has exactly
// one block (a single edge counts).
bool is_two_connected(const WeightedGraph& g);

// Sum over vertices of val(v) + 3w(v) - 3. Requires a stable graph.
int d_invariant(const WeightedGraph& g);

// Deterministic pseudo-random stable curve of the given genus.
TropicalCurve random_stable_graph(std::uint64_t seed, int target_genus, int max_edges);

// Deterministic pseudo-random loopless 2-connected multigraph (weights 0)
// with at most max_edges edges and genus >= 1, built by ear additions.
TropicalCurve random_two_connected_curve(std::uint64_t seed, int max_edges);

// Same graph with fresh pseudo-random lengths.
TropicalCurve with_random_lengths(const WeightedGraph& g, std::uint64_t seed);

}  // namespace hyptype
