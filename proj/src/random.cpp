#include <random>
#include <string>

#include "hyptype/errors.hpp"
#include "hyptype/graph.hpp"

namespace hyptype {

namespace {

// mt19937_64 output is specified by the standard; the distributions are
// not, so bounded draws are done by hand to keep seeds portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int below(int bound) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(bound)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int numerator, int denominator) { return below(denominator) < numerator; }

 private:
  std::mt19937_64 engine_;
};

Rational draw_length(Rng& rng) { return Rational(rng.between(1, 6), rng.between(1, 3)); }

}  // namespace

TropicalCurve random_stable_graph(std::uint64_t seed, int target_genus, int max_edges) {
  if (target_genus < 2) throw InputError("random_stable_graph requires genus >= 2");
  if (max_edges < 0) throw InputError("max_edges must be nonnegative");
  Rng rng(seed);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    const int total_weight = rng.chance(1, 2) ? 0 : rng.between(0, target_genus);
    const int vertex_count = rng.between(1, std::max(1, 2 * target_genus - 2));
    const int edge_count = target_genus - total_weight + vertex_count - 1;
    if (edge_count > max_edges) continue;

    std::vector<std::array<int, 2>> ends;
    for (int v = 1; v < vertex_count; ++v) ends.push_back({rng.below(v), v});
    while (static_cast<int>(ends.size()) < edge_count) {
      ends.push_back({rng.below(vertex_count), rng.below(vertex_count)});
    }
    for (int i = static_cast<int>(ends.size()) - 1; i > 0; --i) std::swap(ends[i], ends[rng.below(i + 1)]);
    std::vector<int> weights(vertex_count, 0);
    for (int k = 0; k < total_weight; ++k) ++weights[rng.below(vertex_count)];

    GraphBuilder builder;
    for (int v = 0; v < vertex_count; ++v) builder.add_vertex("v" + std::to_string(v), weights[v]);
    for (int e = 0; e < edge_count; ++e) builder.add_edge("e" + std::to_string(e), ends[e][0], ends[e][1], draw_length(rng));
    TropicalCurve curve = builder.curve();
    if (is_stable(curve.graph())) return curve;
  }
  GraphBuilder fallback;
  fallback.add_vertex("v0", target_genus);
  return fallback.curve();
}

TropicalCurve random_two_connected_curve(std::uint64_t seed, int max_edges) {
  if (max_edges < 2) throw InputError("a loopless 2-connected graph of genus >= 1 needs 2 edges");
  Rng rng(seed);
  GraphBuilder builder;
  int vertices = 0;
  int edges = 0;
  auto fresh_vertex = [&] { return builder.add_vertex("v" + std::to_string(vertices++)); };
  auto add = [&](int a, int b) { builder.add_edge("e" + std::to_string(edges++), a, b, draw_length(rng)); };

  // Initial cycle on 2..4 vertices (a digon when 2).
  const int cycle = std::min(rng.between(2, 4), max_edges);
  for (int i = 0; i < cycle; ++i) fresh_vertex();
  for (int i = 0; i < cycle; ++i) add(i, (i + 1) % cycle);
  const int target = rng.between(edges, max_edges);
  while (edges < target) {
    const int budget = target - edges;
    const int interior = rng.between(0, std::min(2, budget - 1));
    const int a = rng.below(vertices);
    int b = rng.below(vertices - 1);
    if (b >= a) ++b;
    int prev = a;
    for (int k = 0; k < interior; ++k) {
      const int v = fresh_vertex();
      add(prev, v);
      prev = v;
    }
    add(prev, b);
  }
  return builder.curve();
}

TropicalCurve with_random_lengths(const WeightedGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Rational> lengths;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) lengths.push_back(draw_length(rng));
  return TropicalCurve(g, std::move(lengths));
}

}  // namespace hyptype
