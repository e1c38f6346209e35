#include "hyptype/minors.hpp"

#include <algorithm>
#include <numeric>

#include "hyptype/errors.hpp"
#include "hyptype/isomorphism.hpp"

namespace hyptype {

Pattern k4_pattern() {
  Pattern p{"K4", 4, {}};
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) p.edges.push_back({a, b});
  }
  return p;
}

Pattern l3_pattern() {
  return {"L3", 3, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 0}, {2, 0}}};
}

Pattern pattern_from_graph(const WeightedGraph& g, std::string name) {
  Pattern p{std::move(name), g.vertex_count(), {}};
  for (const auto& e : g.edges()) p.edges.push_back(e.ends);
  return p;
}

namespace {

constexpr int kMaxReducedVertices = 14;
constexpr int kMaxPatternVertices = 8;

// A path of host edges whose inner vertices have been suppressed.
struct Chain {
  VertexIndex a = 0, b = 0;
  std::vector<EdgeIndex> path;  // oriented from a to b
  std::vector<VertexIndex> interior;
  bool alive = true;
};

struct ReducedHost {
  std::vector<Chain> chains;
  std::vector<char> alive_vertex;
};

int min_degree(const Pattern& p) {
  std::vector<int> degree(p.vertex_count, 0);
  for (const auto& e : p.edges) {
    ++degree[e[0]];
    ++degree[e[1]];
  }
  return p.vertex_count == 0 ? 0 : *std::min_element(degree.begin(), degree.end());
}

bool has_loops(const Pattern& p) {
  return std::any_of(p.edges.begin(), p.edges.end(), [](const auto& e) { return e[0] == e[1]; });
}

// Host loops are dropped for loopless patterns; when the pattern has minimum
// degree >= 3, leaves are deleted and degree-2 vertices suppressed, which
// preserves containment of such patterns.
ReducedHost reduce(const WeightedGraph& host, const Pattern& pattern) {
  ReducedHost r;
  const bool keep_loops = has_loops(pattern);
  r.alive_vertex.assign(host.vertex_count(), 1);
  for (EdgeIndex e = 0; e < host.edge_count(); ++e) {
    if (host.is_loop(e) && !keep_loops) continue;
    r.chains.push_back({host.edge(e).ends[0], host.edge(e).ends[1], {e}, {}, true});
  }
  if (keep_loops || min_degree(pattern) < 3) return r;

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> at(host.vertex_count());
    for (int c = 0; c < static_cast<int>(r.chains.size()); ++c) {
      if (!r.chains[c].alive) continue;
      at[r.chains[c].a].push_back(c);
      at[r.chains[c].b].push_back(c);
    }
    for (VertexIndex v = 0; v < host.vertex_count() && !changed; ++v) {
      if (!r.alive_vertex[v]) continue;
      const auto& inc = at[v];
      if (inc.size() == 0 && std::count(r.alive_vertex.begin(), r.alive_vertex.end(), 1) > 1) {
        r.alive_vertex[v] = 0;
        changed = true;
      } else if (inc.size() == 1) {
        r.chains[inc[0]].alive = false;
        r.alive_vertex[v] = 0;
        changed = true;
      } else if (inc.size() == 2 && inc[0] == inc[1]) {
        // A cycle hanging at v alone cannot meet a pattern of degree >= 3.
        r.chains[inc[0]].alive = false;
        r.alive_vertex[v] = 0;
        changed = true;
      } else if (inc.size() == 2) {
        Chain p = r.chains[inc[0]], q = r.chains[inc[1]];
        if (p.b != v) {
          std::swap(p.a, p.b);
          std::reverse(p.path.begin(), p.path.end());
          std::reverse(p.interior.begin(), p.interior.end());
        }
        if (q.a != v) {
          std::swap(q.a, q.b);
          std::reverse(q.path.begin(), q.path.end());
          std::reverse(q.interior.begin(), q.interior.end());
        }
        Chain merged{p.a, q.b, p.path, p.interior, true};
        merged.path.insert(merged.path.end(), q.path.begin(), q.path.end());
        merged.interior.push_back(v);
        merged.interior.insert(merged.interior.end(), q.interior.begin(), q.interior.end());
        r.chains[inc[0]].alive = false;
        r.chains[inc[1]].alive = false;
        r.alive_vertex[v] = 0;
        if (merged.a != merged.b) r.chains.push_back(std::move(merged));
        changed = true;
      }
    }
  }
  return r;
}

class ModelSearch {
 public:
  ModelSearch(const WeightedGraph& host, const Pattern& pattern) : host_(host), pattern_(pattern) {
    reduced_ = reduce(host, pattern);
    for (VertexIndex v = 0; v < host.vertex_count(); ++v) {
      if (reduced_.alive_vertex[v]) {
        local_.push_back(v);
      }
    }
    index_.assign(host.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(local_.size()); ++i) index_[local_[i]] = i;
    for (int c = 0; c < static_cast<int>(reduced_.chains.size()); ++c) {
      if (reduced_.chains[c].alive) live_chains_.push_back(c);
    }
    const int p = pattern.vertex_count;
    need_.assign(p, std::vector<int>(p, 0));
    for (const auto& e : pattern.edges) {
      ++need_[e[0]][e[1]];
      if (e[0] != e[1]) ++need_[e[1]][e[0]];
    }
  }

  std::optional<MinorModel> run() {
    const int n = static_cast<int>(local_.size());
    const int p = pattern_.vertex_count;
    if (p == 0) return MinorModel{};
    if (n > kMaxReducedVertices) throw SizeGuardError("minor search limited to 14 vertices after reduction");
    if (p > kMaxPatternVertices) throw SizeGuardError("minor patterns limited to 8 vertices");
    if (n < p) return std::nullopt;
    block_.assign(n, -1);
    if (assign(0, 0)) return lift();
    return std::nullopt;
  }

 private:
  bool assign(int v, int used) {
    const int n = static_cast<int>(local_.size());
    const int p = pattern_.vertex_count;
    if (n - v < p - used) return false;
    if (v == n) return used == p && evaluate();
    for (int b = 0; b <= std::min(used, p - 1); ++b) {
      block_[v] = b;
      if (assign(v + 1, std::max(used, b + 1))) return true;
    }
    block_[v] = -1;
    return false;
  }

  bool evaluate() {
    const int n = static_cast<int>(local_.size());
    const int p = pattern_.vertex_count;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    mult_.assign(p, std::vector<int>(p, 0));
    std::vector<int> internal(p, 0), size(p, 0);
    for (int v = 0; v < n; ++v) ++size[block_[v]];
    for (int c : live_chains_) {
      const int x = index_[reduced_.chains[c].a], y = index_[reduced_.chains[c].b];
      const int bx = block_[x], by = block_[y];
      if (bx == by) {
        ++internal[bx];
        parent[find(x)] = find(y);
      } else {
        ++mult_[bx][by];
        ++mult_[by][bx];
      }
    }
    std::vector<int> root(p, -1);
    for (int v = 0; v < n; ++v) {
      const int r = find(v);
      if (root[block_[v]] < 0) root[block_[v]] = r;
      if (root[block_[v]] != r) return false;
    }
    // cycle rank inside each block bounds the loops it can carry
    for (int b = 0; b < p; ++b) internal[b] -= size[b] - 1;
    perm_.resize(p);
    std::iota(perm_.begin(), perm_.end(), 0);
    do {
      bool ok = true;
      for (int a = 0; a < p && ok; ++a) {
        if (need_[a][a] > internal[perm_[a]]) ok = false;
        for (int b = a + 1; b < p && ok; ++b) ok = need_[a][b] <= mult_[perm_[a]][perm_[b]];
      }
      if (ok) return true;
    } while (std::next_permutation(perm_.begin(), perm_.end()));
    return false;
  }

  MinorModel lift() const {
    const int p = pattern_.vertex_count;
    MinorModel model;
    model.branch_sets.assign(p, {});
    std::vector<int> pattern_of_block(p);
    for (int a = 0; a < p; ++a) pattern_of_block[perm_[a]] = a;
    auto block_of = [&](VertexIndex host_vertex) { return block_[index_[host_vertex]]; };
    for (int v = 0; v < static_cast<int>(local_.size()); ++v) {
      model.branch_sets[pattern_of_block[block_[v]]].push_back(local_[v]);
    }

    // Spanning forest of each block over internal chains; the rest can carry
    // pattern loops.
    std::vector<int> parent(local_.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    std::vector<char> taken(reduced_.chains.size(), 0);
    std::vector<int> spare;
    for (int c : live_chains_) {
      const auto& ch = reduced_.chains[c];
      if (block_of(ch.a) != block_of(ch.b)) continue;
      const int x = find(index_[ch.a]), y = find(index_[ch.b]);
      if (x != y) {
        parent[x] = y;
      } else {
        spare.push_back(c);
      }
      for (VertexIndex v : ch.interior) model.branch_sets[pattern_of_block[block_of(ch.a)]].push_back(v);
    }

    model.edge_map.assign(pattern_.edges.size(), -1);
    for (std::size_t k = 0; k < pattern_.edges.size(); ++k) {
      const int pa = pattern_.edges[k][0], pb = pattern_.edges[k][1];
      const int ba = perm_[pa], bb = perm_[pb];
      if (pa == pb) {
        for (int c : spare) {
          if (taken[c] || block_of(reduced_.chains[c].a) != ba) continue;
          taken[c] = 1;
          model.edge_map[k] = reduced_.chains[c].path.front();
          break;
        }
        continue;
      }
      for (int c : live_chains_) {
        const auto& ch = reduced_.chains[c];
        if (taken[c]) continue;
        const int ca = block_of(ch.a), cb = block_of(ch.b);
        if (!((ca == ba && cb == bb) || (ca == bb && cb == ba))) continue;
        taken[c] = 1;
        // Interior joins the branch set of pa; the host edge is the one
        // leaving toward pb.
        for (VertexIndex v : ch.interior) model.branch_sets[pa].push_back(v);
        model.edge_map[k] = ca == ba ? ch.path.back() : ch.path.front();
        break;
      }
    }
    for (auto& set : model.branch_sets) std::sort(set.begin(), set.end());
    return model;
  }

  const WeightedGraph& host_;
  const Pattern& pattern_;
  ReducedHost reduced_;
  std::vector<VertexIndex> local_;
  std::vector<int> index_;
  std::vector<int> live_chains_;
  std::vector<std::vector<int>> need_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> block_;
  std::vector<int> perm_;
};

}  // namespace

std::optional<MinorModel> find_minor_model(const WeightedGraph& host, const Pattern& pattern) {
  auto model = ModelSearch(host, pattern).run();
  if (model) {
    if (auto why = minor_model_violation(host, pattern, *model); !why.empty()) {
      throw PipelineError("minor model failed verification: " + why);
    }
  }
  return model;
}

std::string minor_model_violation(const WeightedGraph& host, const Pattern& pattern, const MinorModel& model) {
  const int p = pattern.vertex_count;
  if (static_cast<int>(model.branch_sets.size()) != p) return "wrong number of branch sets";
  if (model.edge_map.size() != pattern.edges.size()) return "wrong number of mapped edges";
  std::vector<int> owner(host.vertex_count(), -1);
  for (int a = 0; a < p; ++a) {
    if (model.branch_sets[a].empty()) return "empty branch set";
    for (VertexIndex v : model.branch_sets[a]) {
      if (v < 0 || v >= host.vertex_count()) return "branch vertex out of range";
      if (owner[v] >= 0) return "branch sets overlap at '" + host.vertex(v).id + "'";
      owner[v] = a;
    }
  }
  std::vector<char> used(host.edge_count(), 0), loop_edge(host.edge_count(), 0);
  for (std::size_t k = 0; k < pattern.edges.size(); ++k) {
    const EdgeIndex e = model.edge_map[k];
    if (e < 0 || e >= host.edge_count()) return "pattern edge " + std::to_string(k) + " is unmapped";
    if (used[e]) return "host edge '" + host.edge(e).id + "' used twice";
    used[e] = 1;
    const int x = owner[host.edge(e).ends[0]], y = owner[host.edge(e).ends[1]];
    const int pa = pattern.edges[k][0], pb = pattern.edges[k][1];
    if (!((x == pa && y == pb) || (x == pb && y == pa))) {
      return "host edge '" + host.edge(e).id + "' does not join the right branch sets";
    }
    if (pa == pb) loop_edge[e] = 1;
  }
  for (int a = 0; a < p; ++a) {
    const auto& set = model.branch_sets[a];
    std::vector<char> seen(host.vertex_count(), 0);
    std::vector<VertexIndex> stack{set.front()};
    seen[set.front()] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const VertexIndex v = stack.back();
      stack.pop_back();
      for (HalfEdge h : host.half_edges_at(v)) {
        if (loop_edge[WeightedGraph::edge_of(h)]) continue;
        const VertexIndex w = host.anchor(WeightedGraph::opposite(h));
        if (owner[w] != a || seen[w]) continue;
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
    if (reached != set.size()) return "branch set " + std::to_string(a) + " is not connected";
  }
  return {};
}

std::optional<SpDecomposition> series_parallel_decomposition(const WeightedGraph& g) {
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (g.is_loop(e)) throw InputError("series-parallel test needs a loopless graph");
  }
  int two_connected_blocks = 0;
  for (const auto& b : blocks(g)) two_connected_blocks += b.kind == Block::Kind::kTwoConnected;
  if (g.edge_count() == 0 || two_connected_blocks != 1) throw InputError("series-parallel test needs a 2-connected graph");

  SpDecomposition d;
  struct Working {
    VertexIndex a, b;
    int node;
  };
  std::vector<Working> work;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    d.nodes.push_back({SpNode::Kind::kLeaf, e, {}, g.edge(e).ends, -1});
    work.push_back({g.edge(e).ends[0], g.edge(e).ends[1], e});
  }
  auto same_pair = [](const Working& x, const Working& y) {
    return (x.a == y.a && x.b == y.b) || (x.a == y.b && x.b == y.a);
  };
  while (work.size() > 1) {
    bool reduced = false;
    for (std::size_t j = 1; j < work.size() && !reduced; ++j) {
      for (std::size_t i = 0; i < j && !reduced; ++i) {
        if (!same_pair(work[i], work[j])) continue;
        const int node = static_cast<int>(d.nodes.size());
        d.nodes.push_back({SpNode::Kind::kParallel, -1, {work[i].node, work[j].node}, {work[i].a, work[i].b}, -1});
        d.steps.push_back("parallel " + g.vertex(work[i].a).id + "-" + g.vertex(work[i].b).id);
        work[i].node = node;
        work.erase(work.begin() + static_cast<long>(j));
        reduced = true;
      }
    }
    if (reduced) continue;
    std::vector<int> degree(g.vertex_count(), 0);
    for (const auto& w : work) {
      ++degree[w.a];
      ++degree[w.b];
    }
    for (VertexIndex v = 0; v < g.vertex_count() && !reduced; ++v) {
      if (degree[v] != 2) continue;
      std::vector<std::size_t> inc;
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (work[i].a == v || work[i].b == v) inc.push_back(i);
      }
      const Working p = work[inc[0]], q = work[inc[1]];
      const VertexIndex x = p.a == v ? p.b : p.a;
      const VertexIndex y = q.a == v ? q.b : q.a;
      const int node = static_cast<int>(d.nodes.size());
      d.nodes.push_back({SpNode::Kind::kSeries, -1, {p.node, q.node}, {x, y}, v});
      d.steps.push_back("series at " + g.vertex(v).id);
      work[inc[0]] = {x, y, node};
      work.erase(work.begin() + static_cast<long>(inc[1]));
      reduced = true;
    }
    if (!reduced) return std::nullopt;
  }
  d.root = work.front().node;
  return d;
}

std::vector<WeightedGraph> connected_minors(const WeightedGraph& g, int min_genus) {
  const TropicalCurve c = TropicalCurve::with_unit_lengths(g);
  std::vector<WeightedGraph> out;
  auto keep = [&](const WeightedGraph& m) {
    if (genus(m) >= min_genus) out.push_back(m);
  };
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (g.vertex(v).weight == 0) continue;
    std::vector<Vertex> vertices = g.vertices();
    --vertices[v].weight;
    keep(WeightedGraph(std::move(vertices), g.edges()));
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const EdgeIndex removed[] = {e};
    if (is_connected_without(g, removed)) keep(delete_edge(c, e).graph());
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) keep(contract_edge(c, e).first.graph());
  return dedupe_isomorphic(std::move(out));
}

}  // namespace hyptype
