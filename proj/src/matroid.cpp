#include "hyptype/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

#include "hyptype/errors.hpp"

namespace hyptype {

namespace {

constexpr int kMaxIndependentCycles = 16;

// True when the edge set is the edge set of one simple cycle (a loop counts).
bool is_single_cycle(const WeightedGraph& g, EdgeMask mask) {
  std::vector<int> degree(g.vertex_count(), 0);
  for (EdgeMask rest = mask; rest; rest &= rest - 1) {
    const auto& ends = g.edge(std::countr_zero(rest)).ends;
    ++degree[ends[0]];
    ++degree[ends[1]];
  }
  for (int d : degree) {
    if (d != 0 && d != 2) return false;
  }
  // Walk the component of the first edge; it must use every edge.
  const EdgeIndex first = std::countr_zero(mask);
  EdgeMask reached = EdgeMask{1} << first;
  std::vector<VertexIndex> stack{g.edge(first).ends[0]};
  std::vector<char> seen(g.vertex_count(), 0);
  seen[stack.back()] = 1;
  while (!stack.empty()) {
    const VertexIndex v = stack.back();
    stack.pop_back();
    for (HalfEdge h : g.half_edges_at(v)) {
      const EdgeIndex e = WeightedGraph::edge_of(h);
      if (!((mask >> e) & 1)) continue;
      reached |= EdgeMask{1} << e;
      const VertexIndex w = g.anchor(WeightedGraph::opposite(h));
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == mask;
}

std::vector<EdgeMask> fundamental_cycles(const WeightedGraph& g) {
  const int n = g.vertex_count();
  std::vector<EdgeIndex> parent_edge(n, -1);
  std::vector<int> depth(n, -1);
  std::vector<char> tree(g.edge_count(), 0);
  std::vector<VertexIndex> queue{0};
  depth[0] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const VertexIndex v = queue[i];
    for (HalfEdge h : g.half_edges_at(v)) {
      const VertexIndex w = g.anchor(WeightedGraph::opposite(h));
      if (depth[w] >= 0) continue;
      depth[w] = depth[v] + 1;
      parent_edge[w] = WeightedGraph::edge_of(h);
      tree[parent_edge[w]] = 1;
      queue.push_back(w);
    }
  }
  std::vector<EdgeMask> cycles;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (tree[e]) continue;
    EdgeMask cycle = EdgeMask{1} << e;
    VertexIndex x = g.edge(e).ends[0], y = g.edge(e).ends[1];
    while (x != y) {
      if (depth[x] < depth[y]) std::swap(x, y);
      cycle ^= EdgeMask{1} << parent_edge[x];
      x = g.other_end(parent_edge[x], x);
    }
    cycles.push_back(cycle);
  }
  return cycles;
}

struct SearchData {
  CycleMatroid matroid;
  std::vector<std::vector<int>> sizes_through;  // per edge, sorted circuit sizes
  std::vector<std::vector<int>> together;       // circuits containing both edges
};

SearchData prepare(const WeightedGraph& g) {
  SearchData data{circuits(g), {}, {}};
  const int m = g.edge_count();
  data.sizes_through.assign(m, {});
  data.together.assign(m, std::vector<int>(m, 0));
  for (EdgeMask c : data.matroid.circuits) {
    if (c >> m) continue;  // weight marker
    const int size = std::popcount(c);
    for (EdgeMask r = c; r; r &= r - 1) {
      const int e = std::countr_zero(r);
      data.sizes_through[e].push_back(size);
      for (EdgeMask s = c; s; s &= s - 1) ++data.together[e][std::countr_zero(s)];
    }
  }
  for (auto& sizes : data.sizes_through) std::sort(sizes.begin(), sizes.end());
  return data;
}

std::vector<int> circuit_size_profile(const CycleMatroid& m) {
  std::vector<int> sizes;
  for (EdgeMask c : m.circuits) sizes.push_back(std::popcount(c));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

CycleMatroid circuits(const WeightedGraph& g) {
  if (g.edge_count() + g.total_weight() >= 64) throw SizeGuardError("cycle matroid limited to 63 ground elements");
  const auto basis = fundamental_cycles(g);
  if (static_cast<int>(basis.size()) > kMaxIndependentCycles) {
    throw SizeGuardError("cycle enumeration limited to 16 independent cycles");
  }
  CycleMatroid m;
  m.edge_count = g.edge_count();
  m.weight_loops = g.total_weight();
  const std::uint32_t subsets = std::uint32_t{1} << basis.size();
  for (std::uint32_t s = 1; s < subsets; ++s) {
    EdgeMask sum = 0;
    for (std::uint32_t r = s; r; r &= r - 1) sum ^= basis[std::countr_zero(r)];
    if (is_single_cycle(g, sum)) m.circuits.push_back(sum);
  }
  for (int k = 0; k < m.weight_loops; ++k) m.circuits.push_back(EdgeMask{1} << (m.edge_count + k));
  std::sort(m.circuits.begin(), m.circuits.end());
  return m;
}

long for_each_two_isomorphism(const TropicalCurve& a, const TropicalCurve& b, bool length_preserving,
                              const std::function<bool(const std::vector<EdgeIndex>&)>& visit) {
  const WeightedGraph& ga = a.graph();
  const WeightedGraph& gb = b.graph();
  const int m = ga.edge_count();
  if (m != gb.edge_count() || ga.total_weight() != gb.total_weight() || genus(ga) != genus(gb)) return 0;
  const SearchData da = prepare(ga);
  const SearchData db = prepare(gb);
  if (circuit_size_profile(da.matroid) != circuit_size_profile(db.matroid)) return 0;

  auto same_signature = [&](EdgeIndex e, EdgeIndex f) {
    if (length_preserving && a.length(e) != b.length(f)) return false;
    return da.sizes_through[e] == db.sizes_through[f];
  };
  std::vector<std::vector<EdgeIndex>> candidates(m);
  for (EdgeIndex e = 0; e < m; ++e) {
    for (EdgeIndex f = 0; f < m; ++f) {
      if (same_signature(e, f)) candidates[e].push_back(f);
    }
    if (candidates[e].empty()) return 0;
  }

  // Greedy order: fewest candidates first, then prefer edges sharing the most
  // circuits with those already placed so the co-occurrence test bites early.
  std::vector<EdgeIndex> order;
  std::vector<char> placed(m, 0);
  std::vector<long> affinity(m, 0);
  for (int step = 0; step < m; ++step) {
    EdgeIndex best = -1;
    for (EdgeIndex e = 0; e < m; ++e) {
      if (placed[e]) continue;
      if (best < 0 || affinity[e] > affinity[best] ||
          (affinity[e] == affinity[best] && candidates[e].size() < candidates[best].size())) {
        best = e;
      }
    }
    placed[best] = 1;
    order.push_back(best);
    for (EdgeIndex e = 0; e < m; ++e) affinity[e] += da.together[best][e];
  }
  std::vector<int> position(m);
  for (int i = 0; i < m; ++i) position[order[i]] = i;

  // Each graph circuit of a is checked when its last edge (in search order)
  // is assigned.
  std::vector<std::vector<EdgeMask>> closing(m);
  for (EdgeMask c : da.matroid.circuits) {
    if (c >> m) continue;
    int last = -1;
    for (EdgeMask r = c; r; r &= r - 1) last = std::max(last, position[std::countr_zero(r)]);
    closing[last].push_back(c);
  }
  const std::unordered_set<EdgeMask> target(db.matroid.circuits.begin(), db.matroid.circuits.end());

  std::vector<EdgeIndex> image(m, -1);
  std::vector<char> used(m, 0);
  long visited = 0;
  bool stop = false;
  auto extend = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      ++visited;
      if (!visit(image)) stop = true;
      return;
    }
    const EdgeIndex e = order[depth];
    for (EdgeIndex f : candidates[e]) {
      if (used[f]) continue;
      if (da.together[e][e] != db.together[f][f]) continue;
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) {
        const EdgeIndex p = order[k];
        ok = da.together[e][p] == db.together[f][image[p]];
      }
      if (!ok) continue;
      image[e] = f;
      for (EdgeMask c : closing[depth]) {
        EdgeMask mapped = 0;
        for (EdgeMask r = c; r; r &= r - 1) mapped |= EdgeMask{1} << image[std::countr_zero(r)];
        if (!target.count(mapped)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[f] = 1;
        self(self, depth + 1);
        used[f] = 0;
      }
      image[e] = -1;
      if (stop) return;
    }
  };
  extend(extend, 0);
  return visited;
}

std::optional<TwoIsomorphism> find_two_isomorphism(const TropicalCurve& a, const TropicalCurve& b,
                                                   bool length_preserving) {
  std::optional<TwoIsomorphism> found;
  for_each_two_isomorphism(a, b, length_preserving, [&](const std::vector<EdgeIndex>& map) {
    found = TwoIsomorphism{map, length_preserving};
    return false;
  });
  return found;
}

std::optional<TwoIsomorphism> find_two_isomorphism(const WeightedGraph& a, const WeightedGraph& b) {
  return find_two_isomorphism(TropicalCurve::with_unit_lengths(a), TropicalCurve::with_unit_lengths(b), false);
}

bool verify_two_isomorphism(const TropicalCurve& a, const TropicalCurve& b, const TwoIsomorphism& w) {
  const int m = a.graph().edge_count();
  if (b.graph().edge_count() != m || static_cast<int>(w.edge_map.size()) != m) return false;
  if (a.graph().total_weight() != b.graph().total_weight()) return false;
  std::vector<char> hit(m, 0);
  for (EdgeIndex e = 0; e < m; ++e) {
    const EdgeIndex f = w.edge_map[e];
    if (f < 0 || f >= m || hit[f]) return false;
    hit[f] = 1;
    if (w.length_preserving && a.length(e) != b.length(f)) return false;
  }
  const CycleMatroid ma = circuits(a.graph());
  const CycleMatroid mb = circuits(b.graph());
  if (ma.circuits.size() != mb.circuits.size()) return false;
  const std::unordered_set<EdgeMask> target(mb.circuits.begin(), mb.circuits.end());
  for (EdgeMask c : ma.circuits) {
    if (c >> m) continue;
    EdgeMask mapped = 0;
    for (EdgeMask r = c; r; r &= r - 1) mapped |= EdgeMask{1} << w.edge_map[std::countr_zero(r)];
    if (!target.count(mapped)) return false;
  }
  return true;
}

}  // namespace hyptype
