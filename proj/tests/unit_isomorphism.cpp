#include "doctest.h"
#include "hyptype/isomorphism.hpp"
#include "support/fixtures.hpp"

using namespace hyptype;

namespace {

TropicalCurve relabel(const TropicalCurve& c, std::uint64_t seed) {
  const auto& g = c.graph();
  std::vector<int> perm(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) perm[i] = i;
  std::uint64_t x = seed * 2654435761u + 1;
  for (int i = g.vertex_count() - 1; i > 0; --i) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    std::swap(perm[i], perm[(x >> 33) % (i + 1)]);
  }
  GraphBuilder b;
  std::vector<int> inverse(g.vertex_count());
  for (int i = 0; i < g.vertex_count(); ++i) inverse[perm[i]] = i;
  for (int i = 0; i < g.vertex_count(); ++i) b.add_vertex("r" + std::to_string(i), g.vertex(inverse[i]).weight);
  for (EdgeIndex e = g.edge_count() - 1; e >= 0; --e) {
    const auto [p, q] = g.edge(e).ends;
    b.add_edge("f" + std::to_string(e), perm[q], perm[p], c.length(e));
  }
  return b.curve();
}

}  // namespace

TEST_CASE("isomorphism finds relabellings and respects lengths") {
  CHECK(find_isomorphism(fixtures::theta(1, 2, 3), fixtures::theta(3, 1, 2)));
  CHECK_FALSE(find_isomorphism(fixtures::theta(1, 1, 1), fixtures::theta(1, 1, 2)));
  CHECK(find_isomorphism(fixtures::theta(1, 1, 1).graph(), fixtures::theta(1, 1, 2).graph()));
  CHECK_FALSE(find_isomorphism(fixtures::k4().graph(), fixtures::prism().graph()));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_stable_graph(seed, 2 + seed % 4, 12);
    const auto r = relabel(c, seed);
    const auto iso = find_isomorphism(c, r);
    REQUIRE(iso);
    for (EdgeIndex e = 0; e < c.graph().edge_count(); ++e) {
      const EdgeIndex f = iso->edge_map[e];
      CHECK(c.length(e) == r.length(f));
      const auto [a, b] = c.graph().edge(e).ends;
      const auto [x, y] = r.graph().edge(f).ends;
      const bool same = (iso->vertex_map[a] == x && iso->vertex_map[b] == y) ||
                        (iso->vertex_map[a] == y && iso->vertex_map[b] == x);
      CHECK(same);
    }
    CHECK(isomorphism_invariant(c.graph()) == isomorphism_invariant(r.graph()));
  }
}

TEST_CASE("stable graph census") {
  // Known counts of stable weighted graphs: 7 in genus 2, 42 in genus 3.
  CHECK(enumerate_stable_graphs(2, 8).size() == 7);
  CHECK(enumerate_stable_graphs(3, 8).size() == 42);
}
