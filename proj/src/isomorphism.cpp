#include "hyptype/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hyptype {

namespace {

// Lengths of the edges joining each unordered vertex pair, sorted. Loops at v
// sit on the diagonal.
class PairTable {
 public:
  PairTable(const WeightedGraph& g, const std::vector<Rational>& lengths) : n_(g.vertex_count()) {
    cells_.resize(static_cast<std::size_t>(n_) * n_);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const auto [a, b] = g.edge(e).ends;
      cells_[a * n_ + b].push_back(lengths[e]);
      if (a != b) cells_[b * n_ + a].push_back(lengths[e]);
    }
    for (auto& cell : cells_) std::sort(cell.begin(), cell.end());
  }
  const std::vector<Rational>& at(VertexIndex a, VertexIndex b) const { return cells_[a * n_ + b]; }

 private:
  int n_;
  std::vector<std::vector<Rational>> cells_;
};

std::string vertex_label(const WeightedGraph& g, VertexIndex v) {
  std::vector<int> multiplicities(g.vertex_count(), 0);
  int loops = 0;
  for (HalfEdge h : g.half_edges_at(v)) {
    const EdgeIndex e = WeightedGraph::edge_of(h);
    if (g.is_loop(e)) {
      ++loops;
    } else {
      ++multiplicities[g.other_end(e, v)];
    }
  }
  std::sort(multiplicities.begin(), multiplicities.end());
  std::ostringstream out;
  out << g.vertex(v).weight << ':' << g.valence(v) << ':' << loops / 2 << ':';
  for (int m : multiplicities) {
    if (m > 0) out << m << ',';
  }
  return out.str();
}

std::optional<GraphIsomorphism> match(const WeightedGraph& a, const std::vector<Rational>& la, const WeightedGraph& b,
                                      const std::vector<Rational>& lb) {
  const int n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return std::nullopt;
  std::vector<std::string> label_a(n), label_b(n);
  for (VertexIndex v = 0; v < n; ++v) {
    label_a[v] = vertex_label(a, v);
    label_b[v] = vertex_label(b, v);
  }
  {
    auto sa = label_a, sb = label_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  const PairTable ta(a, la), tb(b, lb);

  // Map vertices in an order where each vertex after the first is adjacent to
  // an earlier one whenever possible, so pair checks prune early.
  std::vector<VertexIndex> order;
  std::vector<char> placed(n, 0);
  order.push_back(0);
  placed[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (HalfEdge h : a.half_edges_at(order[i])) {
      const VertexIndex w = a.anchor(WeightedGraph::opposite(h));
      if (!placed[w]) {
        placed[w] = 1;
        order.push_back(w);
      }
    }
  }

  std::vector<VertexIndex> image(n, -1);
  std::vector<char> used(n, 0);
  auto extend = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    const VertexIndex v = order[depth];
    for (VertexIndex c = 0; c < n; ++c) {
      if (used[c] || label_a[v] != label_b[c]) continue;
      if (ta.at(v, v) != tb.at(c, c)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        ok = ta.at(v, order[k]) == tb.at(c, image[order[k]]);
      }
      if (!ok) continue;
      image[v] = c;
      used[c] = 1;
      if (self(self, depth + 1)) return true;
      used[c] = 0;
      image[v] = -1;
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;

  GraphIsomorphism iso;
  iso.vertex_map = image;
  iso.edge_map.assign(a.edge_count(), -1);
  std::map<std::pair<VertexIndex, VertexIndex>, std::vector<EdgeIndex>> groups_b;
  for (EdgeIndex e = 0; e < b.edge_count(); ++e) {
    auto [x, y] = b.edge(e).ends;
    groups_b[{std::min(x, y), std::max(x, y)}].push_back(e);
  }
  for (auto& [key, edges] : groups_b) {
    std::stable_sort(edges.begin(), edges.end(), [&](EdgeIndex p, EdgeIndex q) { return lb[p] < lb[q]; });
  }
  std::map<std::pair<VertexIndex, VertexIndex>, std::vector<EdgeIndex>> groups_a;
  for (EdgeIndex e = 0; e < a.edge_count(); ++e) {
    const VertexIndex x = image[a.edge(e).ends[0]], y = image[a.edge(e).ends[1]];
    groups_a[{std::min(x, y), std::max(x, y)}].push_back(e);
  }
  for (auto& [key, edges] : groups_a) {
    std::stable_sort(edges.begin(), edges.end(), [&](EdgeIndex p, EdgeIndex q) { return la[p] < la[q]; });
    const auto& target = groups_b.at(key);
    for (std::size_t i = 0; i < edges.size(); ++i) iso.edge_map[edges[i]] = target[i];
  }
  return iso;
}

}  // namespace

std::optional<GraphIsomorphism> find_isomorphism(const WeightedGraph& a, const WeightedGraph& b) {
  return match(a, std::vector<Rational>(a.edge_count(), Rational(1)), b, std::vector<Rational>(b.edge_count(), Rational(1)));
}

std::optional<GraphIsomorphism> find_isomorphism(const TropicalCurve& a, const TropicalCurve& b) {
  return match(a.graph(), a.lengths(), b.graph(), b.lengths());
}

std::string isomorphism_invariant(const WeightedGraph& g) {
  std::vector<std::string> labels;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) labels.push_back(vertex_label(g, v));
  std::sort(labels.begin(), labels.end());
  std::string key = std::to_string(g.edge_count()) + "|";
  for (const auto& l : labels) key += l + "|";
  return key;
}

std::vector<WeightedGraph> dedupe_isomorphic(std::vector<WeightedGraph> graphs) {
  std::map<std::string, std::vector<std::size_t>> buckets;
  std::vector<WeightedGraph> kept;
  for (auto& g : graphs) {
    auto& bucket = buckets[isomorphism_invariant(g)];
    bool seen = false;
    for (std::size_t i : bucket) {
      if (find_isomorphism(kept[i], g)) {
        seen = true;
        break;
      }
    }
    if (seen) continue;
    bucket.push_back(kept.size());
    kept.push_back(std::move(g));
  }
  return kept;
}

std::vector<WeightedGraph> enumerate_stable_graphs(int target_genus, int max_edges) {
  std::vector<WeightedGraph> found;
  for (int n = 1; n <= std::max(1, 2 * target_genus - 2); ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) pairs.push_back({i, j});
    }
    // Weight vectors are taken nonincreasing; vertex relabelling covers the rest.
    std::vector<int> weights(n, 0);
    auto each_weights = [&](auto&& self, int index, int remaining, int cap) -> void {
      if (index == n) {
        const int total = std::accumulate(weights.begin(), weights.end(), 0);
        const int edge_count = target_genus - total + n - 1;
        if (edge_count < n - 1 || edge_count > max_edges) return;
        std::vector<int> pick(edge_count, 0);
        auto each_multiset = [&](auto&& inner, int slot, int from) -> void {
          if (slot == edge_count) {
            std::vector<Vertex> vertices;
            for (int v = 0; v < n; ++v) vertices.push_back({"v" + std::to_string(v), weights[v]});
            std::vector<Edge> edges;
            std::vector<int> valence(n, 0);
            for (int e = 0; e < edge_count; ++e) {
              const auto [x, y] = pairs[pick[e]];
              edges.push_back({"e" + std::to_string(e), {x, y}});
              ++valence[x];
              ++valence[y];
            }
            for (int v = 0; v < n; ++v) {
              if (2 * weights[v] - 2 + valence[v] <= 0) return;
            }
            // Connectivity via union-find before paying for validation.
            std::vector<int> parent(n);
            std::iota(parent.begin(), parent.end(), 0);
            auto find = [&](int x) {
              while (parent[x] != x) x = parent[x] = parent[parent[x]];
              return x;
            };
            int components = n;
            for (const auto& edge : edges) {
              const int x = find(edge.ends[0]), y = find(edge.ends[1]);
              if (x != y) {
                parent[x] = y;
                --components;
              }
            }
            if (components != 1) return;
            found.emplace_back(std::move(vertices), std::move(edges));
            return;
          }
          for (int p = from; p < static_cast<int>(pairs.size()); ++p) {
            pick[slot] = p;
            inner(inner, slot + 1, p);
          }
        };
        each_multiset(each_multiset, 0, 0);
        return;
      }
      for (int w = std::min(remaining, cap); w >= 0; --w) {
        weights[index] = w;
        self(self, index + 1, remaining - w, w);
      }
    };
    each_weights(each_weights, 0, target_genus, target_genus);
  }
  return dedupe_isomorphic(std::move(found));
}

}  // namespace hyptype
