#include "hyptype/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "hyptype/errors.hpp"

namespace hyptype {

WeightedGraph::WeightedGraph(std::vector<Vertex> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw InputError("graph has no vertices");
  incidence_.resize(vertices_.size());
  for (VertexIndex v = 0; v < vertex_count(); ++v) {
    if (vertices_[v].weight < 0) throw InputError("vertex '" + vertices_[v].id + "' has negative weight");
    if (!vertex_lookup_.emplace(vertices_[v].id, v).second) {
      throw InputError("duplicate vertex id '" + vertices_[v].id + "'");
    }
  }
  for (EdgeIndex e = 0; e < edge_count(); ++e) {
    if (!edge_lookup_.emplace(edges_[e].id, e).second) {
      throw InputError("duplicate edge id '" + edges_[e].id + "'");
    }
    for (int k = 0; k < 2; ++k) {
      const VertexIndex v = edges_[e].ends[k];
      if (v < 0 || v >= vertex_count()) throw InputError("edge '" + edges_[e].id + "' has a dangling end");
      incidence_[v].push_back(2 * e + k);
    }
  }
  if (!is_connected_without(*this, {})) throw InputError("graph is disconnected");
}

VertexIndex WeightedGraph::other_end(EdgeIndex e, VertexIndex v) const {
  return edges_[e].ends[0] == v ? edges_[e].ends[1] : edges_[e].ends[0];
}

int WeightedGraph::total_weight() const {
  int total = 0;
  for (const auto& v : vertices_) total += v.weight;
  return total;
}

std::optional<VertexIndex> WeightedGraph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> WeightedGraph::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexIndex WeightedGraph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw InputError("unknown vertex '" + std::string(id) + "'");
}

EdgeIndex WeightedGraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw InputError("unknown edge '" + std::string(id) + "'");
}

TropicalCurve::TropicalCurve(WeightedGraph graph, std::vector<Rational> lengths)
    : graph_(std::move(graph)), lengths_(std::move(lengths)) {
  if (static_cast<int>(lengths_.size()) != graph_.edge_count()) {
    throw InputError("length table does not match the edge set");
  }
  for (EdgeIndex e = 0; e < graph_.edge_count(); ++e) {
    if (lengths_[e] <= 0) throw InputError("edge '" + graph_.edge(e).id + "' has nonpositive length");
  }
}

TropicalCurve TropicalCurve::with_unit_lengths(WeightedGraph graph) {
  std::vector<Rational> lengths(graph.edge_count(), Rational(1));
  return TropicalCurve(std::move(graph), std::move(lengths));
}

Rational TropicalCurve::total_length() const {
  Rational total = 0;
  for (const auto& l : lengths_) total += l;
  return total;
}

EdgeTrace EdgeTrace::identity(const WeightedGraph& g) {
  EdgeTrace trace;
  trace.edge_images.resize(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) trace.edge_images[e] = {EdgeImage::Kind::kEdge, e};
  trace.vertex_images.resize(g.vertex_count());
  std::iota(trace.vertex_images.begin(), trace.vertex_images.end(), 0);
  return trace;
}

EdgeTrace EdgeTrace::then(const EdgeTrace& next) const {
  EdgeTrace out;
  out.vertex_images.reserve(vertex_images.size());
  for (VertexIndex v : vertex_images) out.vertex_images.push_back(next.vertex_images[v]);
  out.edge_images.reserve(edge_images.size());
  for (const EdgeImage& img : edge_images) {
    switch (img.kind) {
      case EdgeImage::Kind::kEdge:
        out.edge_images.push_back(next.edge_images[img.index]);
        break;
      case EdgeImage::Kind::kVertex:
        out.edge_images.push_back({EdgeImage::Kind::kVertex, next.vertex_images[img.index]});
        break;
      case EdgeImage::Kind::kDeleted:
        out.edge_images.push_back(img);
        break;
    }
  }
  return out;
}

int Block::genus() const {
  if (kind == Kind::kWeightOneVertex) return 1;
  return static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + 1;
}

// ---------------------------------------------------------------------------
// CurveEditor

CurveEditor::CurveEditor(const TropicalCurve& source)
    : source_(&source),
      parent_(source.graph().vertex_count()),
      weights_(source.graph().vertex_count()),
      state_(source.graph().edge_count(), EdgeImage::Kind::kEdge),
      collapsed_into_(source.graph().edge_count(), -1),
      lengths_(source.lengths()) {
  std::iota(parent_.begin(), parent_.end(), 0);
  for (VertexIndex v = 0; v < source.graph().vertex_count(); ++v) weights_[v] = source.graph().vertex(v).weight;
}

VertexIndex CurveEditor::representative(VertexIndex v) const {
  while (parent_[v] != v) v = parent_[v];
  return v;
}

std::array<VertexIndex, 2> CurveEditor::ends(EdgeIndex e) const {
  const auto& raw = source_->graph().edge(e).ends;
  return {representative(raw[0]), representative(raw[1])};
}

bool CurveEditor::is_loop(EdgeIndex e) const {
  const auto ab = ends(e);
  return ab[0] == ab[1];
}

void CurveEditor::contract(EdgeIndex e, std::optional<VertexIndex> survivor) {
  if (!alive(e)) throw InputError("edge '" + source_->graph().edge(e).id + "' is no longer present");
  const auto [a, b] = ends(e);
  state_[e] = EdgeImage::Kind::kVertex;
  if (a == b) {
    weights_[a] += 1;
    collapsed_into_[e] = a;
    return;
  }
  VertexIndex keep = std::min(a, b);
  if (survivor) {
    const VertexIndex s = representative(*survivor);
    if (s != a && s != b) throw InputError("contraction survivor is not an end of the edge");
    keep = s;
  }
  const VertexIndex gone = keep == a ? b : a;
  parent_[gone] = keep;
  weights_[keep] += weights_[gone];
  collapsed_into_[e] = keep;
}

void CurveEditor::erase(EdgeIndex e) {
  if (!alive(e)) throw InputError("edge '" + source_->graph().edge(e).id + "' is no longer present");
  state_[e] = EdgeImage::Kind::kDeleted;
}

void CurveEditor::set_length(EdgeIndex e, Rational length) { lengths_[e] = std::move(length); }

std::vector<EdgeIndex> CurveEditor::incident_edges(VertexIndex rep) const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < source_->graph().edge_count(); ++e) {
    if (!alive(e)) continue;
    const auto ab = ends(e);
    if (ab[0] == rep || ab[1] == rep) out.push_back(e);
  }
  return out;
}

int CurveEditor::valence(VertexIndex rep) const {
  int val = 0;
  for (EdgeIndex e = 0; e < source_->graph().edge_count(); ++e) {
    if (!alive(e)) continue;
    const auto ab = ends(e);
    val += (ab[0] == rep) + (ab[1] == rep);
  }
  return val;
}

std::vector<VertexIndex> CurveEditor::live_vertices() const {
  std::vector<VertexIndex> out;
  for (VertexIndex v = 0; v < static_cast<int>(parent_.size()); ++v) {
    if (parent_[v] == v) out.push_back(v);
  }
  return out;
}

std::pair<TropicalCurve, EdgeTrace> CurveEditor::finish() const {
  const WeightedGraph& g = source_->graph();
  std::vector<VertexIndex> new_index(g.vertex_count(), -1);
  std::vector<Vertex> vertices;
  for (VertexIndex v : live_vertices()) {
    new_index[v] = static_cast<VertexIndex>(vertices.size());
    vertices.push_back({g.vertex(v).id, weights_[v]});
  }
  EdgeTrace trace;
  trace.vertex_images.resize(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) trace.vertex_images[v] = new_index[representative(v)];

  std::vector<Edge> edges;
  std::vector<Rational> lengths;
  trace.edge_images.resize(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    switch (state_[e]) {
      case EdgeImage::Kind::kEdge: {
        const auto ab = ends(e);
        trace.edge_images[e] = {EdgeImage::Kind::kEdge, static_cast<int>(edges.size())};
        edges.push_back({g.edge(e).id, {new_index[ab[0]], new_index[ab[1]]}});
        lengths.push_back(lengths_[e]);
        break;
      }
      case EdgeImage::Kind::kVertex:
        trace.edge_images[e] = {EdgeImage::Kind::kVertex, new_index[representative(collapsed_into_[e])]};
        break;
      case EdgeImage::Kind::kDeleted:
        trace.edge_images[e] = {EdgeImage::Kind::kDeleted, -1};
        break;
    }
  }
  return {TropicalCurve(WeightedGraph(std::move(vertices), std::move(edges)), std::move(lengths)),
          std::move(trace)};
}

// ---------------------------------------------------------------------------
// GraphBuilder

VertexIndex GraphBuilder::add_vertex(std::string id, int weight) {
  vertices_.push_back({std::move(id), weight});
  return static_cast<VertexIndex>(vertices_.size()) - 1;
}

EdgeIndex GraphBuilder::add_edge(std::string id, VertexIndex a, VertexIndex b, Rational length) {
  edges_.push_back({std::move(id), {a, b}});
  lengths_.push_back(std::move(length));
  return static_cast<EdgeIndex>(edges_.size()) - 1;
}

EdgeIndex GraphBuilder::add_edge(std::string id, std::string_view a, std::string_view b, Rational length) {
  auto lookup = [&](std::string_view name) {
    for (VertexIndex v = 0; v < static_cast<int>(vertices_.size()); ++v) {
      if (vertices_[v].id == name) return v;
    }
    throw InputError("unknown vertex '" + std::string(name) + "'");
  };
  return add_edge(std::move(id), lookup(a), lookup(b), std::move(length));
}

WeightedGraph GraphBuilder::graph() const { return WeightedGraph(vertices_, edges_); }

TropicalCurve GraphBuilder::curve() const { return TropicalCurve(graph(), lengths_); }

// ---------------------------------------------------------------------------
// Elementary invariants

int genus(const WeightedGraph& g) {
  return g.edge_count() - g.vertex_count() + 1 + g.total_weight();
}

bool is_stable(const WeightedGraph& g) {
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (2 * g.vertex(v).weight - 2 + g.valence(v) <= 0) return false;
  }
  return true;
}

bool is_connected_without(const WeightedGraph& g, std::span<const EdgeIndex> removed) {
  std::vector<char> gone(g.edge_count(), 0);
  for (EdgeIndex e : removed) gone[e] = 1;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexIndex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const VertexIndex v = stack.back();
    stack.pop_back();
    for (HalfEdge h : g.half_edges_at(v)) {
      const EdgeIndex e = WeightedGraph::edge_of(h);
      if (gone[e]) continue;
      const VertexIndex w = g.anchor(WeightedGraph::opposite(h));
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.vertex_count();
}

std::pair<TropicalCurve, EdgeTrace> stable_model(const TropicalCurve& c) {
  if (genus(c) < 2) throw InputError("stable model requires genus >= 2");
  CurveEditor editor(c);
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexIndex v : editor.live_vertices()) {
      if (editor.weight(v) != 0) continue;
      const auto incident = editor.incident_edges(v);
      const int val = editor.valence(v);
      if (val == 1) {
        const EdgeIndex e = incident.front();
        const auto ab = editor.ends(e);
        editor.contract(e, ab[0] == v ? ab[1] : ab[0]);
        changed = true;
        break;
      }
      if (val == 2 && incident.size() == 2) {
        const EdgeIndex keep = std::min(incident[0], incident[1]);
        const EdgeIndex drop = std::max(incident[0], incident[1]);
        const auto ab = editor.ends(drop);
        const VertexIndex far = ab[0] == v ? ab[1] : ab[0];
        editor.set_length(keep, editor.length(keep) + editor.length(drop));
        editor.contract(drop, far);
        changed = true;
        break;
      }
    }
  }
  return editor.finish();
}

std::pair<TropicalCurve, EdgeTrace> contract_edge(const TropicalCurve& c, EdgeIndex e) {
  if (e < 0 || e >= c.graph().edge_count()) throw InputError("no such edge");
  CurveEditor editor(c);
  editor.contract(e);
  return editor.finish();
}

TropicalCurve delete_edge(const TropicalCurve& c, EdgeIndex e) {
  if (e < 0 || e >= c.graph().edge_count()) throw InputError("no such edge");
  const EdgeIndex removed[] = {e};
  if (!is_connected_without(c.graph(), removed)) {
    throw InputError("deleting edge '" + c.graph().edge(e).id + "' disconnects the graph");
  }
  CurveEditor editor(c);
  editor.erase(e);
  return editor.finish().first;
}

std::vector<Block> blocks(const WeightedGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> disc(n, 0), low(n, 0);
  std::vector<EdgeIndex> stack;
  std::vector<Block> found;
  int clock = 0;

  auto close_block = [&](EdgeIndex until) {
    Block b;
    b.kind = Block::Kind::kTwoConnected;
    while (true) {
      const EdgeIndex e = stack.back();
      stack.pop_back();
      b.edges.push_back(e);
      if (e == until) break;
    }
    std::sort(b.edges.begin(), b.edges.end());
    for (EdgeIndex e : b.edges) {
      b.vertices.push_back(g.edge(e).ends[0]);
      b.vertices.push_back(g.edge(e).ends[1]);
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
    found.push_back(std::move(b));
  };

  std::function<void(VertexIndex, EdgeIndex)> dfs = [&](VertexIndex v, EdgeIndex via) {
    disc[v] = low[v] = ++clock;
    for (HalfEdge h : g.half_edges_at(v)) {
      const EdgeIndex e = WeightedGraph::edge_of(h);
      if (g.is_loop(e) || e == via) continue;
      const VertexIndex w = g.anchor(WeightedGraph::opposite(h));
      if (disc[w] == 0) {
        stack.push_back(e);
        dfs(w, e);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) close_block(e);
      } else if (disc[w] < disc[v]) {
        stack.push_back(e);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  dfs(0, -1);

  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!g.is_loop(e)) continue;
    found.push_back({Block::Kind::kTwoConnected, {g.edge(e).ends[0]}, {e}});
  }
  std::sort(found.begin(), found.end(), [](const Block& a, const Block& b) { return a.edges.front() < b.edges.front(); });
  for (VertexIndex v = 0; v < n; ++v) {
    for (int k = 0; k < g.vertex(v).weight; ++k) found.push_back({Block::Kind::kWeightOneVertex, {v}, {}});
  }
  return found;
}

bool is_two_connected(const WeightedGraph& g) {
  if (g.total_weight() != 0 || g.edge_count() == 0) return false;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (g.is_loop(e)) return false;
  }
  return blocks(g).size() == 1;
}

int d_invariant(const WeightedGraph& g) {
  if (!is_stable(g)) throw InputError("d-invariant is defined for stable graphs only");
  int d = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) d += g.valence(v) + 3 * g.vertex(v).weight - 3;
  return d;
}

}  // namespace hyptype
