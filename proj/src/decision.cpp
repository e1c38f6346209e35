#include "hyptype/decision.hpp"

#include <deque>
#include <functional>
#include <numeric>

#include "hyptype/connectivity.hpp"
#include "hyptype/errors.hpp"
#include "hyptype/isomorphism.hpp"

namespace hyptype {

GramMatrix jacobian_gram(const TropicalCurve& c) {
  const WeightedGraph& g = c.graph();
  const int n = g.vertex_count();
  std::vector<EdgeIndex> via(n, -1);
  std::vector<int> depth(n, -1);
  std::vector<bool> in_tree(g.edge_count(), false);
  GramMatrix out;
  std::deque<VertexIndex> queue{0};
  depth[0] = 0;
  while (!queue.empty()) {
    const VertexIndex v = queue.front();
    queue.pop_front();
    for (HalfEdge h : g.half_edges_at(v)) {
      const VertexIndex w = g.anchor(WeightedGraph::opposite(h));
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      via[w] = WeightedGraph::edge_of(h);
      in_tree[via[w]] = true;
      out.spanning_tree.push_back(via[w]);
      queue.push_back(w);
    }
  }
  // Cycle of a non-tree edge: the edge from ends[0] to ends[1], then back
  // through the tree.
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (in_tree[e]) continue;
    std::vector<std::pair<EdgeIndex, int>> cycle{{e, 1}};
    VertexIndex up = g.edge(e).ends[1], down = g.edge(e).ends[0];
    std::vector<std::pair<EdgeIndex, int>> tail;
    while (up != down) {
      if (depth[up] >= depth[down]) {
        const EdgeIndex t = via[up];
        cycle.push_back({t, g.edge(t).ends[0] == up ? 1 : -1});
        up = g.other_end(t, up);
      } else {
        const EdgeIndex t = via[down];
        tail.push_back({t, g.edge(t).ends[1] == down ? 1 : -1});
        down = g.other_end(t, down);
      }
    }
    cycle.insert(cycle.end(), tail.rbegin(), tail.rend());
    out.cycles.push_back(std::move(cycle));
  }
  out.weight_directions = g.total_weight();
  const int b1 = static_cast<int>(out.cycles.size());
  const int size = b1 + out.weight_directions;
  out.entries.assign(size, std::vector<Rational>(size, 0));
  std::vector<std::vector<int>> coefficient(b1, std::vector<int>(g.edge_count(), 0));
  for (int i = 0; i < b1; ++i) {
    for (const auto& [e, s] : out.cycles[i]) coefficient[i][e] += s;
  }
  for (int i = 0; i < b1; ++i) {
    for (int j = 0; j < b1; ++j) {
      for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        if (coefficient[i][e] && coefficient[j][e]) out.entries[i][j] += coefficient[i][e] * coefficient[j][e] * c.length(e);
      }
    }
  }
  return out;
}

Rational determinant(const RationalMatrix& m) {
  RationalMatrix a = m;
  const int n = static_cast<int>(a.size());
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (int k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det;
}

Rational gram_determinant_oracle(const TropicalCurve& c) {
  const WeightedGraph& g = c.graph();
  if (g.total_weight() != 0) throw InputError("the spanning-tree oracle needs all weights 0");
  std::vector<EdgeIndex> candidates;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!g.is_loop(e)) candidates.push_back(e);
  }
  const int need = g.vertex_count() - 1;
  const int m = static_cast<int>(candidates.size());
  double sets = 1;
  for (int k = 0; k < need; ++k) sets = sets * (m - k) / (k + 1);
  if (sets > 2e6) throw SizeGuardError("too many candidate spanning trees");

  Rational all = 1;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) all *= c.length(e);
  Rational total = 0;
  std::vector<EdgeIndex> chosen;
  std::function<void(int)> grow = [&](int from) {
    if (static_cast<int>(chosen.size()) == need) {
      std::vector<int> parent(g.vertex_count());
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
      Rational inside = 1;
      for (EdgeIndex e : chosen) {
        const int a = find(g.edge(e).ends[0]), b = find(g.edge(e).ends[1]);
        if (a == b) return;
        parent[a] = b;
        inside *= c.length(e);
      }
      total += all / inside;
      return;
    }
    for (int k = from; k < m; ++k) {
      chosen.push_back(candidates[k]);
      grow(k + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return total;
}

std::optional<TorelliWitness> jacobians_isomorphic(const TropicalCurve& a, const TropicalCurve& b) {
  if (genus(a) < 2 || genus(b) < 2) throw InputError("Jacobian comparison needs genus >= 2");
  if (genus(a) != genus(b)) return std::nullopt;
  auto a3 = three_edge_connectivization(a).result;
  auto b3 = three_edge_connectivization(b).result;
  auto map = find_two_isomorphism(a3, b3, true);
  if (!map) return std::nullopt;
  return TorelliWitness{std::move(a3), std::move(b3), std::move(*map)};
}

bool verify_torelli_witness(const TropicalCurve& a, const TropicalCurve& b, const TorelliWitness& w) {
  if (genus(a) != genus(b) || !w.map.length_preserving) return false;
  if (!(three_edge_connectivization(a).result == w.source3)) return false;
  if (!(three_edge_connectivization(b).result == w.target3)) return false;
  return verify_two_isomorphism(w.source3, w.target3, w.map);
}

namespace {

struct Piece {
  TropicalCurve curve;
  Involution involution;
  WedgePoint point;
};

TropicalCurve sub_curve(const TropicalCurve& c, const Block& block) {
  GraphBuilder b;
  std::vector<VertexIndex> place(c.graph().vertex_count(), -1);
  for (VertexIndex v : block.vertices) place[v] = b.add_vertex(c.graph().vertex(v).id);
  for (EdgeIndex e : block.edges) {
    const auto [x, y] = c.graph().edge(e).ends;
    b.add_edge(c.graph().edge(e).id, place[x], place[y], c.length(e));
  }
  return b.curve();
}

Piece loop_piece(std::string vertex, std::string loop, Rational length, int weight) {
  GraphBuilder b;
  b.add_vertex(vertex, weight);
  if (length > 0) b.add_edge(loop, 0, 0, length);
  TropicalCurve curve = b.curve();
  Involution t = Involution::identity(curve.graph());
  if (length > 0) t.half_edge_map = {1, 0};
  return {std::move(curve), std::move(t), WedgePoint::at_vertex(std::move(vertex))};
}

Piece block_piece(const TropicalCurve& block) {
  const TropicalCurve stable = stable_model(block).first;
  auto nested = nested_ear_decomposition(stable.graph());
  if (!nested) throw PipelineError("a block has a K4 minor");
  auto hted = htedify(stable.graph(), std::move(*nested));
  auto three = ensure_three_initial_ears(stable.graph(), std::move(hted));
  HedResult hed = hedify(stable, std::move(three));
  HedInvolution inv = involution_from_hed(hed.curve.graph(), hed.ears);
  TropicalCurve curve = hyperelliptify_lengths(hed.curve);
  if (const auto why = involution_violation(curve, inv.involution); !why.empty()) {
    throw PipelineError("block involution does not preserve the transported lengths: " + why);
  }
  const Involution& t = inv.involution;
  for (VertexIndex v = 0; v < curve.graph().vertex_count(); ++v) {
    if (t.vertex_map[v] == v) return {curve, t, WedgePoint::at_vertex(curve.graph().vertex(v).id)};
  }
  const auto flipped = t.flipped_edges();
  if (flipped.empty()) throw PipelineError("block involution has no fixed point");
  const EdgeIndex e = flipped.front();
  return {curve, t, WedgePoint::on_edge(curve.graph().edge(e).id, curve.length(e) / 2)};
}

// Subdivides a piece at its wedge point if that is an edge midpoint, keeping
// the involution (the two halves are exchanged, the new vertex is fixed).
std::pair<Piece, VertexIndex> settle(Piece p) {
  auto [curve, mid] = materialize_point(p.curve, p.point);
  if (p.point.edge.empty()) return {std::move(p), mid};
  const EdgeIndex e = p.curve.graph().edge_index(p.point.edge);
  const EdgeIndex half = p.curve.graph().edge_count();
  Involution t = p.involution;
  t.vertex_map.push_back(mid);
  t.half_edge_map.resize(2 * (half + 1));
  t.half_edge_map[2 * e] = 2 * half + 1;
  t.half_edge_map[2 * half + 1] = 2 * e;
  t.half_edge_map[2 * e + 1] = 2 * half;
  t.half_edge_map[2 * half] = 2 * e + 1;
  WedgePoint point = WedgePoint::at_vertex(curve.graph().vertex(mid).id);
  return {Piece{std::move(curve), std::move(t), std::move(point)}, mid};
}

}  // namespace

PositiveCertificate hyperelliptic_model(const TropicalCurve& c) {
  if (genus(c) < 2) throw InputError("hyperelliptic model needs genus >= 2");
  const TropicalCurve stable = stable_model(c).first;
  const TropicalCurve two = two_edge_connectivization(stable).result;

  std::vector<Piece> pieces;
  for (const Block& block : blocks(two.graph())) {
    const std::string& first = two.graph().vertex(block.vertices.front()).id;
    if (block.kind == Block::Kind::kWeightOneVertex) {
      pieces.push_back(loop_piece(first, "", 0, 1));
      continue;
    }
    const TropicalCurve sub = sub_curve(two, block);
    if (block.genus() == 1) {
      pieces.push_back(loop_piece(first, two.graph().edge(block.edges.front()).id, sub.total_length(), 0));
    } else if (block.genus() >= 2) {
      pieces.push_back(block_piece(sub));
    }
  }
  if (pieces.empty()) throw PipelineError("no blocks of positive genus");

  auto [acc, glue] = pieces.size() == 1 ? std::pair<Piece, VertexIndex>{std::move(pieces.front()), -1}
                                        : settle(std::move(pieces.front()));
  for (std::size_t k = 1; k < pieces.size(); ++k) {
    auto [next, at] = settle(std::move(pieces[k]));
    const int nv = acc.curve.graph().vertex_count(), ne = acc.curve.graph().edge_count();
    TropicalCurve joined = wedge(acc.curve, acc.point, next.curve, next.point);
    const WeightedGraph& ng = next.curve.graph();
    auto place = [&](VertexIndex v) { return v == at ? glue : nv + (v < at ? v : v - 1); };
    Involution t = acc.involution;
    for (VertexIndex v = 0; v < ng.vertex_count(); ++v) {
      if (v != at) t.vertex_map.push_back(place(next.involution.vertex_map[v]));
    }
    for (HalfEdge h = 0; h < 2 * ng.edge_count(); ++h) t.half_edge_map.push_back(2 * ne + next.involution.half_edge_map[h]);
    acc.curve = std::move(joined);
    acc.involution = std::move(t);
  }

  if (const auto why = involution_violation(acc.curve, acc.involution); !why.empty()) {
    throw PipelineError("assembled involution is invalid: " + why);
  }
  if (!is_hyperelliptic_involution(acc.curve, acc.involution)) {
    throw PipelineError("assembled involution does not have a tree quotient");
  }
  auto witness = jacobians_isomorphic(c, acc.curve);
  if (!witness) throw PipelineError("model is not C1-equivalent to the input");
  return {std::move(acc.curve), std::move(acc.involution), std::move(*witness)};
}

std::optional<PositiveCertificate> try_hyperelliptic_model(const TropicalCurve& c) {
  try {
    return hyperelliptic_model(c);
  } catch (const PipelineError&) {
    return std::nullopt;
  }
}

namespace {

std::optional<NegativeCertificate> find_obstruction(const TropicalCurve& c) {
  const auto [stable, trace] = stable_model(c);
  for (const Pattern& pattern : {k4_pattern(), l3_pattern()}) {
    const auto found = find_minor_model(stable.graph(), pattern);
    if (!found) continue;
    MinorModel lifted;
    for (const auto& set : found->branch_sets) {
      std::vector<VertexIndex> preimage;
      for (VertexIndex v = 0; v < c.graph().vertex_count(); ++v) {
        if (std::find(set.begin(), set.end(), trace.vertex_images[v]) != set.end()) preimage.push_back(v);
      }
      lifted.branch_sets.push_back(std::move(preimage));
    }
    for (EdgeIndex target : found->edge_map) {
      EdgeIndex source = -1;
      for (EdgeIndex e = 0; e < c.graph().edge_count(); ++e) {
        if (trace.edge_images[e] == EdgeImage{EdgeImage::Kind::kEdge, target}) source = e;
      }
      lifted.edge_map.push_back(source);
    }
    if (const auto why = minor_model_violation(c.graph(), pattern, lifted); !why.empty()) {
      throw PipelineError("lifted " + pattern.name + " model is invalid: " + why);
    }
    return NegativeCertificate{pattern, std::move(lifted)};
  }
  return std::nullopt;
}

}  // namespace

bool hyperelliptic_type_verdict(const WeightedGraph& g) {
  if (genus(g) < 2) throw InputError("hyperelliptic type needs genus >= 2");
  const WeightedGraph stable = stable_model(TropicalCurve::with_unit_lengths(g)).first.graph();
  return !find_minor_model(stable, k4_pattern()) && !find_minor_model(stable, l3_pattern());
}

HyptypeCertificate is_hyperelliptic_type(const TropicalCurve& c) {
  if (genus(c) < 2) throw InputError("hyperelliptic type needs genus >= 2");
  HyptypeCertificate cert;
  cert.negative = find_obstruction(c);
  cert.verdict = !cert.negative;
  if (cert.verdict) cert.positive = hyperelliptic_model(c);
  return cert;
}

HyptypeCertificate is_hyperelliptic_type(const WeightedGraph& g) {
  return is_hyperelliptic_type(TropicalCurve::with_unit_lengths(g));
}

std::string certificate_violation(const TropicalCurve& c, const HyptypeCertificate& cert) {
  if (cert.verdict != cert.positive.has_value() || cert.verdict == cert.negative.has_value()) {
    return "verdict does not match the populated certificate";
  }
  if (cert.negative) {
    const auto why = minor_model_violation(c.graph(), cert.negative->pattern, cert.negative->model);
    return why.empty() ? "" : cert.negative->pattern.name + " model: " + why;
  }
  const PositiveCertificate& p = *cert.positive;
  if (genus(p.model) != genus(c)) return "model genus differs";
  if (const auto why = involution_violation(p.model, p.involution); !why.empty()) return "involution: " + why;
  if (!is_hyperelliptic_involution(p.model, p.involution)) return "involution quotient is not a tree";
  if (!verify_torelli_witness(c, p.model, p.witness)) return "Torelli witness does not verify";
  return "";
}

std::optional<std::vector<EdgeIndex>> is_specialization(const WeightedGraph& g, const WeightedGraph& gp) {
  const int k = gp.edge_count() - g.edge_count();
  if (k < 0 || genus(g) != genus(gp) || g.total_weight() < gp.total_weight()) return std::nullopt;
  const int m = gp.edge_count();
  double sets = 1;
  for (int i = 0; i < k; ++i) sets = sets * (m - i) / (i + 1);
  if (sets > 2e5) throw SizeGuardError("too many contraction sets to try");

  const int merges = gp.vertex_count() - g.vertex_count();
  const TropicalCurve unit = TropicalCurve::with_unit_lengths(gp);
  std::vector<EdgeIndex> chosen;
  std::optional<std::vector<EdgeIndex>> found;
  std::function<void(int)> grow = [&](int from) {
    if (found) return;
    if (static_cast<int>(chosen.size()) == k) {
      std::vector<int> parent(gp.vertex_count());
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
      int merged = 0;
      for (EdgeIndex e : chosen) {
        const int a = find(gp.edge(e).ends[0]), b = find(gp.edge(e).ends[1]);
        if (a != b) parent[a] = b, ++merged;
      }
      if (merged != merges) return;
      CurveEditor editor(unit);
      for (EdgeIndex e : chosen) editor.contract(e);
      if (find_isomorphism(editor.finish().first.graph(), g)) found = chosen;
      return;
    }
    for (int e = from; e < m && !found; ++e) {
      chosen.push_back(e);
      grow(e + 1);
      chosen.pop_back();
    }
  };
  grow(0);
  return found;
}

}  // namespace hyptype
