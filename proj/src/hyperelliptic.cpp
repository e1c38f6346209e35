#include "hyptype/hyperelliptic.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hyptype/connectivity.hpp"
#include "hyptype/errors.hpp"

namespace hyptype {

Involution Involution::identity(const WeightedGraph& g) {
  Involution t;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) t.vertex_map.push_back(v);
  for (HalfEdge h = 0; h < 2 * g.edge_count(); ++h) t.half_edge_map.push_back(h);
  return t;
}

std::vector<EdgeIndex> Involution::flipped_edges() const {
  std::vector<EdgeIndex> out;
  for (EdgeIndex e = 0; e < static_cast<int>(half_edge_map.size() / 2); ++e) {
    if (flips(e)) out.push_back(e);
  }
  return out;
}

bool Involution::is_identity() const {
  for (std::size_t v = 0; v < vertex_map.size(); ++v) {
    if (vertex_map[v] != static_cast<VertexIndex>(v)) return false;
  }
  for (std::size_t h = 0; h < half_edge_map.size(); ++h) {
    if (half_edge_map[h] != static_cast<HalfEdge>(h)) return false;
  }
  return true;
}

std::string involution_violation(const TropicalCurve& c, const Involution& t) {
  const WeightedGraph& g = c.graph();
  if (static_cast<int>(t.vertex_map.size()) != g.vertex_count() ||
      static_cast<int>(t.half_edge_map.size()) != 2 * g.edge_count()) {
    return "involution size does not match the graph";
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const VertexIndex u = t.vertex_map[v];
    if (u < 0 || u >= g.vertex_count()) return "vertex image out of range";
    if (t.vertex_map[u] != v) return "vertex map is not an involution at '" + g.vertex(v).id + "'";
    if (g.vertex(u).weight != g.vertex(v).weight) return "vertex weight not preserved at '" + g.vertex(v).id + "'";
  }
  for (HalfEdge h = 0; h < 2 * g.edge_count(); ++h) {
    const HalfEdge k = t.half_edge_map[h];
    if (k < 0 || k >= 2 * g.edge_count()) return "half-edge image out of range";
    if (t.half_edge_map[k] != h) return "half-edge map is not an involution";
    if (g.anchor(k) != t.vertex_map[g.anchor(h)]) return "incidence not preserved";
    if (t.half_edge_map[WeightedGraph::opposite(h)] != WeightedGraph::opposite(k)) {
      return "half-edges of one edge sent to different edges";
    }
    const EdgeIndex e = WeightedGraph::edge_of(h);
    if (c.length(e) != c.length(WeightedGraph::edge_of(k))) return "length not preserved on '" + g.edge(e).id + "'";
  }
  return {};
}

namespace {

constexpr int kMaxVertices = 24;
constexpr int kMaxEdges = 40;

struct EdgeGroup {
  VertexIndex x = 0, y = 0;  // x <= y
  std::vector<EdgeIndex> edges;
};

class InvolutionSearch {
 public:
  InvolutionSearch(const TropicalCurve& c, const InvolutionFilter& filter,
                   const std::function<bool(const Involution&)>& visit)
      : c_(c), g_(c.graph()), filter_(filter), visit_(visit) {
    const int n = g_.vertex_count();
    cells_.assign(static_cast<std::size_t>(n) * n, {});
    std::map<std::pair<int, int>, int> group_index;
    for (EdgeIndex e = 0; e < g_.edge_count(); ++e) {
      auto [a, b] = g_.edge(e).ends;
      if (a > b) std::swap(a, b);
      cells_[a * n + b].push_back(c.length(e));
      if (a != b) cells_[b * n + a].push_back(c.length(e));
      auto [it, fresh] = group_index.emplace(std::make_pair(a, b), static_cast<int>(groups_.size()));
      if (fresh) groups_.push_back({a, b, {}});
      groups_[it->second].edges.push_back(e);
    }
    for (auto& cell : cells_) std::sort(cell.begin(), cell.end());
    std::sort(groups_.begin(), groups_.end(),
              [](const EdgeGroup& p, const EdgeGroup& q) { return std::tie(p.x, p.y) < std::tie(q.x, q.y); });
    for (std::size_t i = 0; i < groups_.size(); ++i) lookup_[{groups_[i].x, groups_[i].y}] = static_cast<int>(i);
    row_signature_.resize(n);
    for (VertexIndex v = 0; v < n; ++v) {
      for (VertexIndex u = 0; u < n; ++u) {
        if (u != v && !cell(v, u).empty()) row_signature_[v].push_back(cell(v, u));
      }
      std::sort(row_signature_[v].begin(), row_signature_[v].end());
    }
    separating_.assign(g_.edge_count(), 0);
    if (filter_.fix_separating_edges) {
      for (EdgeIndex e : separating_edges(g_)) separating_[e] = 1;
    }
    sigma_.assign(n, -1);
    tau_.assign(2 * g_.edge_count(), -1);
  }

  void run() { assign_vertex(0); }

 private:
  const std::vector<Rational>& cell(VertexIndex a, VertexIndex b) const { return cells_[a * g_.vertex_count() + b]; }

  bool compatible(VertexIndex v, VertexIndex u) const {
    if (g_.vertex(v).weight != g_.vertex(u).weight) return false;
    if (filter_.hyperelliptic_only && u != v && g_.vertex(v).weight > 0) return false;
    return cell(v, v) == cell(u, u) && row_signature_[v] == row_signature_[u];
  }

  bool consistent(VertexIndex v) const {
    for (VertexIndex w = 0; w < g_.vertex_count(); ++w) {
      if (sigma_[w] < 0) continue;
      if (cell(v, w) != cell(sigma_[v], sigma_[w])) return false;
    }
    return true;
  }

  void assign_vertex(VertexIndex v) {
    if (stop_) return;
    const int n = g_.vertex_count();
    if (v == n) {
      start_edges();
      return;
    }
    if (sigma_[v] >= 0) {
      assign_vertex(v + 1);
      return;
    }
    for (VertexIndex u = v; u < n && !stop_; ++u) {
      if (sigma_[u] >= 0 || !compatible(v, u)) continue;
      sigma_[v] = u;
      sigma_[u] = v;
      if (consistent(v) && consistent(u)) assign_vertex(v + 1);
      sigma_[v] = -1;
      sigma_[u] = -1;
    }
  }

  void start_edges() {
    for (EdgeIndex e = 0; e < g_.edge_count(); ++e) {
      if (separating_[e] && (sigma_[g_.edge(e).ends[0]] != g_.edge(e).ends[0] ||
                             sigma_[g_.edge(e).ends[1]] != g_.edge(e).ends[1])) {
        return;
      }
    }
    quotient_edges_.clear();
    assign_group(0);
  }

  VertexIndex orbit(VertexIndex v) const { return std::min(v, sigma_[v]); }

  // Registers a non-flipped edge orbit between the orbits of a and b; in
  // hyperelliptic mode rejects quotient loops and repeated quotient edges.
  bool add_quotient_edge(VertexIndex a, VertexIndex b) {
    if (!filter_.hyperelliptic_only) return true;
    VertexIndex p = orbit(a), q = orbit(b);
    if (p == q) return false;
    if (p > q) std::swap(p, q);
    return quotient_edges_.insert({p, q}).second;
  }
  void remove_quotient_edge(VertexIndex a, VertexIndex b) {
    if (!filter_.hyperelliptic_only) return;
    VertexIndex p = orbit(a), q = orbit(b);
    if (p > q) std::swap(p, q);
    quotient_edges_.erase({p, q});
  }

  void set_pair(HalfEdge h, HalfEdge k) {
    tau_[h] = k;
    tau_[k] = h;
  }

  // Half-edge of e anchored at v (for loops, the first).
  HalfEdge half_at(EdgeIndex e, VertexIndex v) const { return g_.edge(e).ends[0] == v ? 2 * e : 2 * e + 1; }

  void assign_group(std::size_t gi) {
    if (stop_) return;
    if (gi == groups_.size()) {
      Involution t{sigma_, tau_};
      if (!visit_(t)) stop_ = true;
      return;
    }
    const EdgeGroup& grp = groups_[gi];
    VertexIndex ix = sigma_[grp.x], iy = sigma_[grp.y];
    if (ix > iy) std::swap(ix, iy);
    const int target = lookup_.at({ix, iy});
    if (target < static_cast<int>(gi)) {
      assign_group(gi + 1);
      return;
    }
    if (target == static_cast<int>(gi)) {
      assign_within(gi, 0);
    } else {
      std::vector<char> used(groups_[target].edges.size(), 0);
      assign_across(gi, target, 0, used);
    }
  }

  // Group mapped onto a different group: a length-preserving bijection, with
  // an orientation choice for loops.
  void assign_across(std::size_t gi, int target, std::size_t k, std::vector<char>& used) {
    if (stop_) return;
    const EdgeGroup& grp = groups_[gi];
    if (k == grp.edges.size()) {
      assign_group(gi + 1);
      return;
    }
    const EdgeIndex e = grp.edges[k];
    const auto& other = groups_[target].edges;
    for (std::size_t j = 0; j < other.size() && !stop_; ++j) {
      const EdgeIndex f = other[j];
      if (used[j] || c_.length(e) != c_.length(f) || separating_[e] || separating_[f]) continue;
      if (!add_quotient_edge(grp.x, grp.y)) continue;
      used[j] = 1;
      const bool loop = grp.x == grp.y;
      for (int orientation = 0; orientation < (loop ? 2 : 1) && !stop_; ++orientation) {
        if (loop) {
          set_pair(2 * e, 2 * f + orientation);
          set_pair(2 * e + 1, 2 * f + 1 - orientation);
        } else {
          const HalfEdge hx = half_at(e, grp.x);
          set_pair(hx, half_at(f, sigma_[grp.x]));
          set_pair(WeightedGraph::opposite(hx), WeightedGraph::opposite(half_at(f, sigma_[grp.x])));
        }
        assign_across(gi, target, k + 1, used);
      }
      used[j] = 0;
      remove_quotient_edge(grp.x, grp.y);
    }
  }

  // Group mapped onto itself: each edge is fixed, flipped, or exchanged with
  // a partner of equal length.
  void assign_within(std::size_t gi, std::size_t k) {
    if (stop_) return;
    const EdgeGroup& grp = groups_[gi];
    while (k < grp.edges.size() && tau_[2 * grp.edges[k]] >= 0) ++k;
    if (k == grp.edges.size()) {
      assign_group(gi + 1);
      return;
    }
    const EdgeIndex e = grp.edges[k];
    const bool loop = grp.x == grp.y;
    const bool swapped = !loop && sigma_[grp.x] == grp.y;
    auto undo = [&](EdgeIndex d) {
      tau_[2 * d] = -1;
      tau_[2 * d + 1] = -1;
    };

    // Fixed pointwise.
    if (!swapped && add_quotient_edge(grp.x, grp.y)) {
      set_pair(2 * e, 2 * e);
      set_pair(2 * e + 1, 2 * e + 1);
      assign_within(gi, k + 1);
      undo(e);
      remove_quotient_edge(grp.x, grp.y);
    }
    // Flipped.
    if ((loop || swapped) && !separating_[e] && !stop_) {
      set_pair(2 * e, 2 * e + 1);
      assign_within(gi, k + 1);
      undo(e);
    }
    // Exchanged with a later edge of the group.
    for (std::size_t j = k + 1; j < grp.edges.size() && !stop_; ++j) {
      const EdgeIndex f = grp.edges[j];
      if (tau_[2 * f] >= 0 || c_.length(e) != c_.length(f) || separating_[e] || separating_[f]) continue;
      if (!add_quotient_edge(grp.x, grp.y)) continue;
      for (int orientation = 0; orientation < (loop ? 2 : 1) && !stop_; ++orientation) {
        if (loop) {
          set_pair(2 * e, 2 * f + orientation);
          set_pair(2 * e + 1, 2 * f + 1 - orientation);
        } else {
          const HalfEdge hx = half_at(e, grp.x);
          const HalfEdge target = half_at(f, sigma_[grp.x]);
          set_pair(hx, target);
          set_pair(WeightedGraph::opposite(hx), WeightedGraph::opposite(target));
        }
        assign_within(gi, k + 1);
        undo(e);
        undo(f);
      }
      remove_quotient_edge(grp.x, grp.y);
    }
  }

  const TropicalCurve& c_;
  const WeightedGraph& g_;
  InvolutionFilter filter_;
  const std::function<bool(const Involution&)>& visit_;
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::vector<std::vector<Rational>>> row_signature_;
  std::vector<EdgeGroup> groups_;
  std::map<std::pair<int, int>, int> lookup_;
  std::vector<char> separating_;
  std::vector<VertexIndex> sigma_;
  std::vector<HalfEdge> tau_;
  std::set<std::pair<VertexIndex, VertexIndex>> quotient_edges_;
  bool stop_ = false;
};

}  // namespace

void for_each_involution(const TropicalCurve& c, const InvolutionFilter& filter,
                         const std::function<bool(const Involution&)>& visit) {
  if (c.graph().vertex_count() > kMaxVertices || c.graph().edge_count() > kMaxEdges) {
    throw SizeGuardError("involution search limited to 24 vertices and 40 edges");
  }
  InvolutionSearch(c, filter, visit).run();
}

std::vector<Involution> enumerate_involutions(const TropicalCurve& c) {
  std::vector<Involution> out;
  for_each_involution(c, {}, [&](const Involution& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::vector<FixedPoint> fixed_points(const TropicalCurve& c, const Involution& t) {
  std::vector<FixedPoint> out;
  for (VertexIndex v = 0; v < c.graph().vertex_count(); ++v) {
    if (t.vertex_map[v] == v) out.push_back({FixedPoint::Kind::kVertex, v});
  }
  for (EdgeIndex e : t.flipped_edges()) out.push_back({FixedPoint::Kind::kEdgeMidpoint, e});
  return out;
}

QuotientResult quotient(const TropicalCurve& c, const Involution& t) {
  if (auto why = involution_violation(c, t); !why.empty()) throw InputError("invalid involution: " + why);
  const WeightedGraph& g = c.graph();
  const bool trivial = t.is_identity();
  std::vector<VertexIndex> vertex_index(g.vertex_count(), -1);
  std::vector<Vertex> vertices;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (t.vertex_map[v] < v) continue;
    vertex_index[v] = static_cast<VertexIndex>(vertices.size());
    vertices.push_back({g.vertex(v).id, 0});
  }
  QuotientResult q{TropicalCurve::with_unit_lengths(WeightedGraph({{"_", 0}}, {})), {}, {}, fixed_points(c, t)};
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    q.vertex_projection.push_back(vertex_index[std::min(v, t.vertex_map[v])]);
  }
  std::vector<Edge> edges;
  std::vector<Rational> lengths;
  q.edge_projection.resize(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (t.flips(e)) {
      q.edge_projection[e] = {EdgeImage::Kind::kVertex, q.vertex_projection[g.edge(e).ends[0]]};
      continue;
    }
    const EdgeIndex image = t.edge_image(e);
    if (image < e) {
      q.edge_projection[e] = q.edge_projection[image];
      continue;
    }
    q.edge_projection[e] = {EdgeImage::Kind::kEdge, static_cast<int>(edges.size())};
    edges.push_back({g.edge(e).id, {q.vertex_projection[g.edge(e).ends[0]], q.vertex_projection[g.edge(e).ends[1]]}});
    lengths.push_back(!trivial && image == e ? 2 * c.length(e) : c.length(e));
  }
  q.quotient = TropicalCurve(WeightedGraph(std::move(vertices), std::move(edges)), std::move(lengths));
  return q;
}

bool is_hyperelliptic_involution(const TropicalCurve& c, const Involution& t) {
  if (!is_valid_involution(c, t)) return false;
  const WeightedGraph& g = c.graph();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.vertex(v).weight > 0 && t.vertex_map[v] != v) return false;
  }
  const auto q = quotient(c, t);
  return q.quotient.graph().edge_count() == q.quotient.graph().vertex_count() - 1;
}

std::optional<Involution> hyperelliptic_involution(const TropicalCurve& stable) {
  std::optional<Involution> found;
  auto take = [&](const Involution& t) {
    if (!is_hyperelliptic_involution(stable, t)) return true;
    found = t;
    return false;
  };
  for_each_involution(stable, {true, true}, take);
  if (!found) for_each_involution(stable, {true, false}, take);
  return found;
}

std::optional<HyperellipticStructure> is_hyperelliptic(const TropicalCurve& c) {
  auto [model, trace] = stable_model(c);
  auto t = hyperelliptic_involution(model);
  if (!t) return std::nullopt;
  return HyperellipticStructure{std::move(model), std::move(trace), std::move(*t)};
}

TropicalCurve hyperelliptify_lengths(const TropicalCurve& c) {
  const C1Partition p = c1_sets(c.graph());
  std::vector<Rational> lengths = c.lengths();
  for (const auto& set : p.sets) {
    Rational total = 0;
    for (EdgeIndex e : set) total += c.length(e);
    for (EdgeIndex e : set) lengths[e] = total / static_cast<int>(set.size());
  }
  return TropicalCurve(c.graph(), std::move(lengths));
}

bool is_strongly_hyperelliptic_type(const WeightedGraph& g) {
  return hyperelliptic_involution(TropicalCurve::with_unit_lengths(g)).has_value();
}

namespace {

std::string fresh_id(std::string base, const std::function<bool(const std::string&)>& taken) {
  while (taken(base)) base += "'";
  return base;
}

}  // namespace

std::pair<TropicalCurve, VertexIndex> materialize_point(const TropicalCurve& c, const WedgePoint& p) {
  const WeightedGraph& g = c.graph();
  if (p.edge.empty()) return {c, g.vertex_index(p.vertex)};
  const EdgeIndex e = g.edge_index(p.edge);
  if (p.offset <= 0 || p.offset >= c.length(e)) throw InputError("point offset must lie strictly inside the edge");
  std::vector<Vertex> vertices = g.vertices();
  std::vector<Edge> edges = g.edges();
  std::vector<Rational> lengths = c.lengths();
  const std::string vid =
      fresh_id(p.edge + "_mid", [&](const std::string& s) { return g.find_vertex(s).has_value(); });
  const std::string eid =
      fresh_id(p.edge + "_b", [&](const std::string& s) { return g.find_edge(s).has_value(); });
  const VertexIndex mid = static_cast<VertexIndex>(vertices.size());
  vertices.push_back({vid, 0});
  const VertexIndex far = edges[e].ends[1];
  edges[e].ends[1] = mid;
  lengths[e] = p.offset;
  edges.push_back({eid, {mid, far}});
  lengths.push_back(c.length(e) - p.offset);
  return {TropicalCurve(WeightedGraph(std::move(vertices), std::move(edges)), std::move(lengths)), mid};
}

TropicalCurve wedge(const TropicalCurve& a, const WedgePoint& pa, const TropicalCurve& b, const WedgePoint& pb) {
  auto [ca, va] = materialize_point(a, pa);
  auto [cb, vb] = materialize_point(b, pb);
  std::vector<Vertex> vertices = ca.graph().vertices();
  std::vector<Edge> edges = ca.graph().edges();
  std::vector<Rational> lengths = ca.lengths();
  std::set<std::string> vertex_ids, edge_ids;
  for (const auto& v : vertices) vertex_ids.insert(v.id);
  for (const auto& e : edges) edge_ids.insert(e.id);
  vertices[va].weight += cb.graph().vertex(vb).weight;
  std::vector<VertexIndex> place(cb.graph().vertex_count(), va);
  for (VertexIndex v = 0; v < cb.graph().vertex_count(); ++v) {
    if (v == vb) continue;
    const std::string id = fresh_id(cb.graph().vertex(v).id, [&](const std::string& s) { return vertex_ids.count(s) > 0; });
    vertex_ids.insert(id);
    place[v] = static_cast<VertexIndex>(vertices.size());
    vertices.push_back({id, cb.graph().vertex(v).weight});
  }
  for (EdgeIndex e = 0; e < cb.graph().edge_count(); ++e) {
    const std::string id = fresh_id(cb.graph().edge(e).id, [&](const std::string& s) { return edge_ids.count(s) > 0; });
    edge_ids.insert(id);
    const auto [x, y] = cb.graph().edge(e).ends;
    edges.push_back({id, {place[x], place[y]}});
    lengths.push_back(cb.length(e));
  }
  return TropicalCurve(WeightedGraph(std::move(vertices), std::move(edges)), std::move(lengths));
}

}  // namespace hyptype
