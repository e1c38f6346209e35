#include "hyptype/ears.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "hyptype/errors.hpp"
#include "hyptype/minors.hpp"

namespace hyptype {

namespace {

std::string ear_name(int i) { return "E" + std::to_string(i); }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

void reverse_ear(Ear& ear) {
  std::reverse(ear.vertices.begin(), ear.vertices.end());
  std::reverse(ear.edges.begin(), ear.edges.end());
}

// Sub-path of ear between positions lo <= hi.
Ear slice(const Ear& ear, int lo, int hi) {
  Ear out;
  out.vertices.assign(ear.vertices.begin() + lo, ear.vertices.begin() + hi + 1);
  out.edges.assign(ear.edges.begin() + lo, ear.edges.begin() + hi);
  return out;
}

// a followed by b; b must start where a ends.
Ear concat(Ear a, const Ear& b) {
  a.vertices.insert(a.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
  a.edges.insert(a.edges.end(), b.edges.begin(), b.edges.end());
  return a;
}

bool contains(std::pair<int, int> outer, std::pair<int, int> inner) {
  return outer.first <= inner.first && inner.second <= outer.second;
}

bool interiors_disjoint(std::pair<int, int> x, std::pair<int, int> y) {
  return x.second <= y.first || y.second <= x.first;
}

std::vector<int> children_of(const Nesting& n, int i) {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(n.parent.size()); ++j) {
    if (n.parent[j] == i) out.push_back(j);
  }
  return out;
}

// Moves the initial ears to the front, keeping relative order. Their
// interiors are fresh, so the result is still an ear decomposition.
void initial_first(const WeightedGraph& g, EarDecomposition& d) {
  const Nesting n = analyze_nesting(g, d);
  std::vector<Ear> ears;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < d.ears.size(); ++i) {
      if ((n.parent[i] == -1) == (pass == 0)) ears.push_back(d.ears[i]);
    }
  }
  d.ears = std::move(ears);
}

void require_stage(const WeightedGraph& g, const EarDecomposition& d, EarStage stage, const char* op) {
  const auto problems = ear_violations(g, d, stage);
  if (!problems.empty()) {
    throw InputError(std::string(op) + " needs a " + stage_name(stage) + " decomposition: " + join(problems));
  }
}

}  // namespace

const char* stage_name(EarStage stage) {
  switch (stage) {
    case EarStage::kEar: return "ear";
    case EarStage::kOpen: return "open";
    case EarStage::kNested: return "nested";
    case EarStage::kHted: return "hted";
    case EarStage::kHed: return "hed";
  }
  return "?";
}

EarStage parse_stage(const std::string& name) {
  for (EarStage s : {EarStage::kEar, EarStage::kOpen, EarStage::kNested, EarStage::kHted, EarStage::kHed}) {
    if (name == stage_name(s)) return s;
  }
  throw InputError("unknown ear stage '" + name + "'");
}

bool Nesting::nested_in(const EarDecomposition& d, int j, int i) const {
  if (i >= j) return false;
  const Ear& ear = d.ears[j];
  return positions[i][ear.front()] >= 0 && positions[i][ear.back()] >= 0;
}

std::pair<int, int> Nesting::interval(const EarDecomposition& d, int i, int j) const {
  const int a = positions[i][d.ears[j].front()];
  const int b = positions[i][d.ears[j].back()];
  return {std::min(a, b), std::max(a, b)};
}

int Nesting::initial_count() const {
  return static_cast<int>(std::count(parent.begin(), parent.end(), -1));
}

Nesting analyze_nesting(const WeightedGraph& g, const EarDecomposition& d) {
  Nesting n;
  const int ears = static_cast<int>(d.ears.size());
  n.owner.assign(g.vertex_count(), -1);
  n.positions.assign(ears, std::vector<int>(g.vertex_count(), -1));
  for (int i = 0; i < ears; ++i) {
    const Ear& ear = d.ears[i];
    for (int k = 0; k < static_cast<int>(ear.vertices.size()); ++k) {
      if (n.positions[i][ear.vertices[k]] < 0) n.positions[i][ear.vertices[k]] = k;
      if (k > 0 && k < ear.length()) n.owner[ear.vertices[k]] = i;
    }
  }
  n.parent.assign(ears, -1);
  if (ears == 0) return n;
  const VertexIndex s = d.ears[0].front(), t = d.ears[0].back();
  for (int j = 1; j < ears; ++j) {
    const VertexIndex a = d.ears[j].front(), b = d.ears[j].back();
    const bool initial = (a == s && b == t) || (a == t && b == s);
    if (!initial) n.parent[j] = std::max(n.owner[a], n.owner[b]);
  }
  return n;
}

std::vector<std::string> ear_violations(const WeightedGraph& g, const EarDecomposition& d, EarStage stage) {
  std::vector<std::string> out;
  if (d.ears.empty()) return {"no ears"};
  const int ears = static_cast<int>(d.ears.size());
  std::vector<int> uses(g.edge_count(), 0);
  for (int i = 0; i < ears; ++i) {
    const Ear& ear = d.ears[i];
    if (ear.edges.empty() || ear.vertices.size() != ear.edges.size() + 1) {
      out.push_back(ear_name(i) + " is not a path with at least one edge");
      continue;
    }
    bool in_range = true;
    for (VertexIndex v : ear.vertices) in_range = in_range && v >= 0 && v < g.vertex_count();
    for (EdgeIndex e : ear.edges) in_range = in_range && e >= 0 && e < g.edge_count();
    if (!in_range) {
      out.push_back(ear_name(i) + " refers to a missing vertex or edge");
      continue;
    }
    for (int k = 0; k < ear.length(); ++k) {
      const auto& ends = g.edge(ear.edges[k]).ends;
      const VertexIndex x = ear.vertices[k], y = ear.vertices[k + 1];
      if (!((ends[0] == x && ends[1] == y) || (ends[0] == y && ends[1] == x))) {
        out.push_back(ear_name(i) + ": edge " + g.edge(ear.edges[k]).id + " does not join its neighbours");
      }
      ++uses[ear.edges[k]];
    }
    std::set<VertexIndex> seen(ear.vertices.begin() + 1, ear.vertices.end());
    if (static_cast<int>(seen.size()) != ear.length() ||
        (ear.length() > 1 && seen.count(ear.front()) && ear.front() != ear.back())) {
      out.push_back(ear_name(i) + " repeats a vertex");
    }
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (uses[e] != 1) out.push_back("edge " + g.edge(e).id + " lies on " + std::to_string(uses[e]) + " ears");
  }
  if (!out.empty()) return out;

  std::vector<int> first(g.vertex_count(), -1);
  for (int i = 0; i < ears; ++i) {
    const Ear& ear = d.ears[i];
    for (int k = 1; k < ear.length(); ++k) {
      if (first[ear.vertices[k]] >= 0) {
        out.push_back("interior vertex " + g.vertex(ear.vertices[k]).id + " of " + ear_name(i) + " already lies on " +
                      ear_name(first[ear.vertices[k]]));
      }
    }
    if (i > 0) {
      for (VertexIndex v : {ear.front(), ear.back()}) {
        if (first[v] < 0) out.push_back("endpoint " + g.vertex(v).id + " of " + ear_name(i) + " is not on an earlier ear");
      }
    }
    for (VertexIndex v : ear.vertices) {
      if (first[v] < 0) first[v] = i;
    }
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (first[v] < 0) out.push_back("vertex " + g.vertex(v).id + " is on no ear");
  }
  if (stage >= EarStage::kOpen) {
    for (int i = 0; i < ears; ++i) {
      if (d.ears[i].front() == d.ears[i].back()) out.push_back(ear_name(i) + " is closed");
    }
  }
  if (!out.empty() || stage < EarStage::kNested) return out;

  const Nesting n = analyze_nesting(g, d);
  for (int j = 1; j < ears; ++j) {
    bool nested = false;
    for (int i = 0; i < j; ++i) nested = nested || n.nested_in(d, j, i);
    if (!nested) out.push_back(ear_name(j) + " is not nested in an earlier ear");
    if (n.parent[j] >= 0 && !n.nested_in(d, j, n.parent[j])) {
      out.push_back(ear_name(j) + " is not nested in " + ear_name(n.parent[j]));
    }
  }
  for (int i = 0; i < ears; ++i) {
    for (int j = i + 1; j < ears; ++j) {
      if (!n.nested_in(d, j, i)) continue;
      for (int k = j + 1; k < ears; ++k) {
        if (!n.nested_in(d, k, i)) continue;
        const auto x = n.interval(d, i, j), y = n.interval(d, i, k);
        if (!interiors_disjoint(x, y) && !contains(x, y) && !contains(y, x)) {
          out.push_back("nest intervals of " + ear_name(j) + " and " + ear_name(k) + " in " + ear_name(i) + " cross");
        }
      }
    }
  }
  if (!out.empty() || stage < EarStage::kHted) return out;

  for (int i = 0; i < ears; ++i) {
    const auto kids = children_of(n, i);
    for (std::size_t a = 0; a < kids.size(); ++a) {
      for (std::size_t b = a + 1; b < kids.size(); ++b) {
        const auto x = n.interval(d, i, kids[a]), y = n.interval(d, i, kids[b]);
        if (!contains(x, y) && !contains(y, x)) {
          out.push_back(ear_name(kids[a]) + " and " + ear_name(kids[b]) + " are properly nested in " + ear_name(i) +
                        " with disjoint nest intervals");
        }
      }
    }
  }
  if (!out.empty() || stage < EarStage::kHed) return out;

  for (int j = 1; j < ears; ++j) {
    const int i = n.parent[j];
    if (i < 0) continue;
    const auto x = n.interval(d, i, j);
    if (x.first == 0 || x.second == d.ears[i].length()) {
      out.push_back(ear_name(j) + " shares an endpoint with " + ear_name(i) + ", its proper-nesting parent");
    }
  }
  for (int i = 0; i < ears; ++i) {
    for (int j = i + 1; j < ears; ++j) {
      if (!n.nested_in(d, j, i)) continue;
      for (int k = i + 1; k < ears; ++k) {
        if (k == j || !n.nested_in(d, k, i)) continue;
        const auto x = n.interval(d, i, j), y = n.interval(d, i, k);
        if (x == y || !contains(y, x)) continue;
        if (!(y.first < x.first && x.second < y.second)) {
          out.push_back("nest interval of " + ear_name(j) + " in " + ear_name(i) + " touches the end of that of " +
                        ear_name(k));
        }
      }
    }
  }
  return out;
}

std::optional<EarDecomposition> nested_ear_decomposition(const WeightedGraph& g) {
  if (genus(g) < 1 || g.total_weight() != 0) throw InputError("nested ear decomposition needs genus >= 1 and no weights");
  const auto sp = series_parallel_decomposition(g);
  if (!sp) return std::nullopt;

  EarDecomposition d;
  std::deque<std::pair<int, VertexIndex>> spawned;
  // Appends the main path of node, entered at terminal `from`, to ear.
  std::function<void(int, VertexIndex, Ear&)> walk = [&](int id, VertexIndex from, Ear& ear) {
    const SpNode& node = sp->nodes[id];
    switch (node.kind) {
      case SpNode::Kind::kLeaf:
        ear.edges.push_back(node.edge);
        ear.vertices.push_back(g.other_end(node.edge, from));
        break;
      case SpNode::Kind::kSeries: {
        const int p = node.children[0], q = node.children[1];
        const bool forward = from == node.terminals[0];
        walk(forward ? p : q, from, ear);
        walk(forward ? q : p, node.middle, ear);
        break;
      }
      case SpNode::Kind::kParallel:
        walk(node.children[0], from, ear);
        for (std::size_t c = 1; c < node.children.size(); ++c) spawned.emplace_back(node.children[c], from);
        break;
    }
  };
  spawned.emplace_back(sp->root, sp->nodes[sp->root].terminals[0]);
  while (!spawned.empty()) {
    const auto [id, from] = spawned.front();
    spawned.pop_front();
    Ear ear;
    ear.vertices.push_back(from);
    walk(id, from, ear);
    d.ears.push_back(std::move(ear));
  }
  initial_first(g, d);
  const auto problems = ear_violations(g, d, EarStage::kNested);
  if (!problems.empty()) throw PipelineError("series-parallel ears are not nested: " + join(problems));
  d.stage = EarStage::kNested;
  return d;
}

EarDecomposition htedify(const WeightedGraph& g, EarDecomposition d) {
  require_stage(g, d, EarStage::kNested, "htedify");
  initial_first(g, d);
  const int bound = g.edge_count() * g.edge_count();
  for (int step = 0; step <= bound; ++step) {
    const Nesting n = analyze_nesting(g, d);
    int bad = -1;
    for (int i = 0; i < static_cast<int>(d.ears.size()) && bad < 0; ++i) {
      const auto kids = children_of(n, i);
      for (std::size_t a = 0; a < kids.size() && bad < 0; ++a) {
        for (std::size_t b = a + 1; b < kids.size() && bad < 0; ++b) {
          const auto x = n.interval(d, i, kids[a]), y = n.interval(d, i, kids[b]);
          if (!contains(x, y) && !contains(y, x)) bad = i;
        }
      }
    }
    if (bad < 0) {
      d.stage = EarStage::kHted;
      return d;
    }
    if (n.initial_count() != 2) {
      throw PipelineError("htedify: " + ear_name(bad) + " has disjoint properly nested ears but there are " +
                          std::to_string(n.initial_count()) + " initial ears (suspected L3 minor)");
    }
    if (bad == 0) {
      std::swap(d.ears[0], d.ears[1]);
      continue;
    }
    if (bad != 1) {
      throw PipelineError("htedify: violation at " + ear_name(bad) + " below the initial ears (suspected L3 minor)");
    }
    const VertexIndex s = d.ears[0].front();
    if (d.ears[1].front() != s) reverse_ear(d.ears[1]);
    const Nesting m = analyze_nesting(g, d);
    std::vector<std::pair<int, int>> maximal;
    const auto kids = children_of(m, 1);
    for (int j : kids) {
      const auto x = m.interval(d, 1, j);
      bool inside = false;
      for (int k : kids) {
        const auto y = m.interval(d, 1, k);
        inside = inside || (y != x && contains(y, x));
      }
      if (!inside) maximal.push_back(x);
    }
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    if (maximal.size() < 2) throw PipelineError("htedify: inconsistent violation at E1");
    // t' is the end of the second maximal interval nearer to s.
    const int cut = maximal[1].first;
    const Ear e0 = d.ears[0], e1 = d.ears[1];
    Ear tail = slice(e1, cut, e1.length());
    reverse_ear(tail);
    d.ears[0] = concat(e0, tail);
    d.ears[1] = slice(e1, 0, cut);
  }
  throw PipelineError("htedify: no HTED after " + std::to_string(bound) + " steps (suspected L3 minor)");
}

EarDecomposition ensure_three_initial_ears(const WeightedGraph& g, EarDecomposition d) {
  require_stage(g, d, EarStage::kHted, "ensure_three_initial_ears");
  if (analyze_nesting(g, d).initial_count() >= 3) return d;
  if (analyze_nesting(g, d).initial_count() != 2) throw InputError("ensure_three_initial_ears needs two initial ears");

  // Try s, then t, looking for an ear ending there that is properly nested in
  // E0 (after swapping E0 and E1 when needed).
  for (int attempt = 0; attempt < 4; ++attempt) {
    EarDecomposition e = d;
    if (attempt & 2) {
      reverse_ear(e.ears[0]);
      reverse_ear(e.ears[1]);
    }
    if (attempt & 1) std::swap(e.ears[0], e.ears[1]);
    const VertexIndex s = e.ears[0].front();
    if (e.ears[1].front() != s) reverse_ear(e.ears[1]);
    const Nesting n = analyze_nesting(g, e);
    int best = -1, reach = 0;
    for (int j : children_of(n, 0)) {
      const Ear& ear = e.ears[j];
      if (ear.front() != s && ear.back() != s) continue;
      const int hi = n.interval(e, 0, j).second;
      if (hi > reach) best = j, reach = hi;
    }
    if (best < 0) continue;
    const Ear e0 = e.ears[0], e1 = e.ears[1];
    Ear tail = slice(e0, reach, e0.length());
    reverse_ear(tail);
    e.ears[0] = slice(e0, 0, reach);
    e.ears[1] = concat(e1, tail);
    const auto problems = ear_violations(g, e, EarStage::kHted);
    if (!problems.empty()) throw PipelineError("ensure_three_initial_ears: result is not a HTED: " + join(problems));
    if (analyze_nesting(g, e).initial_count() < 3) throw PipelineError("ensure_three_initial_ears: re-rooting failed");
    e.stage = EarStage::kHted;
    return e;
  }
  throw PipelineError("ensure_three_initial_ears: no ear ends at an end of E0 (graph not stable?)");
}

namespace {

struct HedViolation {
  int ear = -1;
  VertexIndex a = -1;
  bool right = true;  // intervals extend from a towards higher positions
  std::pair<int, int> inner, outer;
};

std::optional<HedViolation> find_hed_violation(const EarDecomposition& d, const Nesting& n) {
  const int ears = static_cast<int>(d.ears.size());
  for (int i = 0; i < ears; ++i) {
    const Ear& ear = d.ears[i];
    std::vector<std::pair<int, int>> intervals{{0, ear.length()}};
    for (int j = i + 1; j < ears; ++j) {
      if (n.nested_in(d, j, i)) intervals.push_back(n.interval(d, i, j));
    }
    std::sort(intervals.begin(), intervals.end());
    intervals.erase(std::unique(intervals.begin(), intervals.end()), intervals.end());
    for (int p = 0; p <= ear.length(); ++p) {
      for (bool right : {true, false}) {
        std::vector<std::pair<int, int>> chain;
        for (const auto& x : intervals) {
          if ((right ? x.first : x.second) == p) chain.push_back(x);
        }
        if (chain.size() < 2) continue;
        auto size = [](std::pair<int, int> x) { return x.second - x.first; };
        std::sort(chain.begin(), chain.end(), [&](auto x, auto y) { return size(x) < size(y); });
        return HedViolation{i, ear.vertices[p], right, chain[chain.size() - 2], chain.back()};
      }
    }
  }
  return std::nullopt;
}

std::string fresh_id(std::set<std::string>& used, std::string id) {
  while (used.count(id)) id += "'";
  used.insert(id);
  return id;
}

}  // namespace

HedResult hedify(const TropicalCurve& c, EarDecomposition d) {
  const WeightedGraph& g0 = c.graph();
  require_stage(g0, d, EarStage::kHted, "hedify");
  if (analyze_nesting(g0, d).initial_count() < 3) throw InputError("hedify needs at least three initial ears");

  std::vector<Vertex> vertices = g0.vertices();
  std::vector<Edge> edges = g0.edges();
  std::vector<Rational> lengths = c.lengths();
  std::set<std::string> used;
  for (const auto& v : vertices) used.insert(v.id);
  for (const auto& e : edges) used.insert(e.id);
  std::vector<EdgeIndex> added;

  auto move_end = [&](EdgeIndex e, VertexIndex from, VertexIndex to) {
    auto& ends = edges[e].ends;
    if (ends[0] == from) ends[0] = to;
    else if (ends[1] == from) ends[1] = to;
    else throw PipelineError("hedify: edge " + edges[e].id + " does not meet the moved vertex");
  };

  const int bound = g0.vertex_count() + 2 * g0.edge_count();
  for (int step = 1;; ++step) {
    const WeightedGraph g(vertices, edges);
    const Nesting n = analyze_nesting(g, d);
    const auto bad = find_hed_violation(d, n);
    if (!bad) break;
    if (step > bound) throw PipelineError("hedify: no HED after " + std::to_string(bound) + " subdivisions");

    const Ear& host = d.ears[bad->ear];
    const VertexIndex a = bad->a;
    const auto [lo, hi] = bad->inner;
    const EdgeIndex split = bad->right ? host.edges[lo] : host.edges[hi - 1];
    const int partner_pos = bad->right ? hi : lo - 1;
    if (partner_pos < 0 || partner_pos >= host.length()) throw PipelineError("hedify: no partner edge");
    const EdgeIndex partner = host.edges[partner_pos];

    std::set<int> moved;
    for (int j = bad->ear + 1; j < static_cast<int>(d.ears.size()); ++j) {
      const Ear& ear = d.ears[j];
      if ((ear.front() == a || ear.back() == a) && n.nested_in(d, j, bad->ear) &&
          contains(bad->inner, n.interval(d, bad->ear, j))) {
        moved.insert(j);
      }
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (int j = 0; j < static_cast<int>(d.ears.size()); ++j) {
        const Ear& ear = d.ears[j];
        if (moved.count(j) || (ear.front() != a && ear.back() != a)) continue;
        for (int r : moved) {
          if (n.nested_in(d, j, r)) {
            moved.insert(j);
            grew = true;
            break;
          }
        }
      }
    }

    const VertexIndex b = static_cast<VertexIndex>(vertices.size());
    vertices.push_back({fresh_id(used, "b" + std::to_string(step)), 0});
    const EdgeIndex f = static_cast<EdgeIndex>(edges.size());
    edges.push_back({fresh_id(used, "f" + std::to_string(step)), {a, b}});
    move_end(split, a, b);
    const Rational half = lengths[partner] / 2;
    lengths[partner] = half;
    lengths.push_back(half);
    added.push_back(f);

    Ear& ear = d.ears[bad->ear];
    if (bad->right) {
      ear.vertices.insert(ear.vertices.begin() + lo + 1, b);
      ear.edges.insert(ear.edges.begin() + lo, f);
    } else {
      ear.vertices.insert(ear.vertices.begin() + hi, b);
      ear.edges.insert(ear.edges.begin() + hi, f);
    }
    for (int j : moved) {
      Ear& m = d.ears[j];
      if (m.front() == a) {
        move_end(m.edges.front(), a, b);
        m.vertices.front() = b;
      } else {
        move_end(m.edges.back(), a, b);
        m.vertices.back() = b;
      }
    }
  }

  TropicalCurve curve(WeightedGraph(vertices, edges), lengths);
  const auto problems = ear_violations(curve.graph(), d, EarStage::kHed);
  if (!problems.empty()) throw PipelineError("hedify: result is not a HED: " + join(problems));
  d.stage = EarStage::kHed;

  CurveEditor editor(curve);
  for (EdgeIndex f : added) editor.contract(f);
  auto [back, trace] = editor.finish();
  if (!(back.graph() == g0)) throw PipelineError("hedify: contracting the added edges does not recover the input");
  return {std::move(curve), std::move(d), std::move(trace), std::move(added)};
}

HedInvolution involution_from_hed(const WeightedGraph& g, const EarDecomposition& d) {
  require_stage(g, d, EarStage::kHed, "involution_from_hed");
  const Nesting n = analyze_nesting(g, d);
  HedInvolution out;
  Involution& t = out.involution;
  t.vertex_map.assign(g.vertex_count(), -1);
  t.half_edge_map.assign(2 * g.edge_count(), -1);
  auto half_at = [&](EdgeIndex e, VertexIndex v) { return g.edge(e).ends[0] == v ? 2 * e : 2 * e + 1; };

  for (int i = 0; i < static_cast<int>(d.ears.size()); ++i) {
    const Ear& ear = d.ears[i];
    const int len = ear.length();
    for (int j : children_of(n, i)) {
      const auto x = n.interval(d, i, j);
      if (x.first + x.second != len) {
        throw PipelineError("involution_from_hed: nest chain of " + ear_name(i) + " is not centred");
      }
    }
    for (int k = 0; k <= len; ++k) {
      VertexIndex& image = t.vertex_map[ear.vertices[k]];
      if (image >= 0 && image != ear.vertices[len - k]) {
        throw PipelineError("involution_from_hed: conflicting images for vertex " + g.vertex(ear.vertices[k]).id);
      }
      image = ear.vertices[len - k];
    }
    for (int k = 0; k < len; ++k) {
      const EdgeIndex e = ear.edges[k], mirror = ear.edges[len - 1 - k];
      const HalfEdge h = half_at(e, ear.vertices[k]);
      const HalfEdge hm = half_at(mirror, ear.vertices[len - k]);
      t.half_edge_map[h] = hm;
      t.half_edge_map[WeightedGraph::opposite(h)] = WeightedGraph::opposite(hm);
      if (k < len - 1 - k) out.equal_lengths.emplace_back(e, mirror);
    }
  }
  const TropicalCurve unit = TropicalCurve::with_unit_lengths(g);
  const std::string why = involution_violation(unit, t);
  if (!why.empty()) throw PipelineError("involution_from_hed: " + why);
  if (!is_hyperelliptic_involution(unit, t)) throw PipelineError("involution_from_hed: quotient is not a tree");
  return out;
}

}  // namespace hyptype
