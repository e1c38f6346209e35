#include <numeric>

#include "doctest.h"
#include "hyptype/errors.hpp"
#include "hyptype/isomorphism.hpp"
#include "hyptype/minors.hpp"
#include "support/fixtures.hpp"

using namespace hyptype;

namespace {

WeightedGraph pattern_graph(const Pattern& p) {
  std::vector<Vertex> vertices;
  for (int v = 0; v < p.vertex_count; ++v) vertices.push_back({"p" + std::to_string(v), 0});
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < p.edges.size(); ++k) edges.push_back({"q" + std::to_string(k), p.edges[k]});
  return WeightedGraph(vertices, edges);
}

// Tries every split of the host edges into deleted / contracted / kept.
bool brute_force_has_minor(const WeightedGraph& host, const Pattern& pattern) {
  const WeightedGraph target = pattern_graph(pattern);
  const int m = host.edge_count();
  long total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  for (long code = 0; code < total; ++code) {
    std::vector<int> role(m);
    long x = code;
    for (int i = 0; i < m; ++i) {
      role[i] = static_cast<int>(x % 3);
      x /= 3;
    }
    std::vector<int> parent(host.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v];
      return v;
    };
    for (int i = 0; i < m; ++i) {
      if (role[i] == 1) parent[find(host.edge(i).ends[0])] = find(host.edge(i).ends[1]);
    }
    std::vector<int> comp(host.vertex_count(), -1);
    int count = 0;
    for (int v = 0; v < host.vertex_count(); ++v) {
      if (comp[find(v)] < 0) comp[find(v)] = count++;
    }
    if (count != pattern.vertex_count) continue;
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
      if (role[i] != 2) continue;
      const int a = comp[find(host.edge(i).ends[0])], b = comp[find(host.edge(i).ends[1])];
      if (a == b) continue;
      edges.push_back({"k" + std::to_string(i), {a, b}});
    }
    if (edges.size() != pattern.edges.size()) continue;
    std::vector<Vertex> vertices;
    for (int v = 0; v < count; ++v) vertices.push_back({"c" + std::to_string(v), 0});
    try {
      if (find_isomorphism(WeightedGraph(vertices, edges), target)) return true;
    } catch (const InputError&) {
    }
  }
  return false;
}

}  // namespace

TEST_CASE("minor models on fixtures") {
  const auto k4 = find_minor_model(fixtures::k4().graph(), k4_pattern());
  REQUIRE(k4);
  CHECK(verify_minor_model(fixtures::k4().graph(), k4_pattern(), *k4));
  CHECK_FALSE(find_minor_model(fixtures::l3().graph(), k4_pattern()));
  CHECK_FALSE(find_minor_model(fixtures::b2().graph(), l3_pattern()));
  CHECK(find_minor_model(fixtures::l3().graph(), l3_pattern()));
  CHECK_FALSE(find_minor_model(fixtures::k4().graph(), l3_pattern()));
  const auto prism = find_minor_model(fixtures::prism().graph(), k4_pattern());
  REQUIRE(prism);
  CHECK(verify_minor_model(fixtures::prism().graph(), k4_pattern(), *prism));
}

TEST_CASE("minor verifier rejects broken models") {
  const auto host = fixtures::k4().graph();
  auto model = *find_minor_model(host, k4_pattern());
  auto overlap = model;
  overlap.branch_sets[0].push_back(overlap.branch_sets[1][0]);
  CHECK_FALSE(verify_minor_model(host, k4_pattern(), overlap));
  auto twice = model;
  twice.edge_map[1] = twice.edge_map[0];
  CHECK_FALSE(verify_minor_model(host, k4_pattern(), twice));
}

TEST_CASE("minor search agrees with brute force on small hosts") {
  int found = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto host = random_stable_graph(seed, 3 + seed % 2, 7).graph();
    for (const auto& pattern : {k4_pattern(), l3_pattern()}) {
      const auto model = find_minor_model(host, pattern);
      CHECK(model.has_value() == brute_force_has_minor(host, pattern));
      if (model) {
        ++found;
        CHECK(verify_minor_model(host, pattern, *model));
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("pattern loops need independent cycles in the branch set") {
  GraphBuilder p;
  p.add_vertex("a");
  p.add_vertex("b");
  p.add_edge("x", "a", "b");
  p.add_edge("la", "a", "a");
  p.add_edge("lb", "b", "b");
  const Pattern dumbbell = pattern_from_graph(p.graph(), "dumbbell");
  const auto model = find_minor_model(fixtures::dumbbell().graph(), dumbbell);
  REQUIRE(model);
  CHECK(verify_minor_model(fixtures::dumbbell().graph(), dumbbell, *model));
  CHECK_FALSE(find_minor_model(fixtures::theta().graph(), dumbbell));
  CHECK(find_minor_model(fixtures::prism().graph(), dumbbell));
}

TEST_CASE("series-parallel recognition") {
  CHECK(is_series_parallel(fixtures::theta().graph()));
  CHECK_FALSE(is_series_parallel(fixtures::k4().graph()));
  CHECK_FALSE(is_series_parallel(fixtures::prism().graph()));
  CHECK(is_series_parallel(fixtures::b2().graph()));
  CHECK(is_series_parallel(fixtures::l3().graph()));
  CHECK_THROWS_AS(is_series_parallel(fixtures::dumbbell().graph()), InputError);
  const auto d = series_parallel_decomposition(fixtures::theta().graph());
  REQUIRE(d);
  CHECK(d->steps.size() == 2);
}

TEST_CASE("series-parallel agrees with K4-minor search") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto g = random_two_connected_curve(seed, 12).graph();
    CHECK(is_series_parallel(g) == !find_minor_model(g, k4_pattern()).has_value());
  }
}

TEST_CASE("connected minors") {
  const auto k4 = connected_minors(fixtures::k4().graph(), 2);
  bool deletion = false;
  for (const auto& m : k4) {
    CHECK(genus(m) <= 3);
    if (m.edge_count() == 5 && m.vertex_count() == 4) deletion = true;
  }
  CHECK(deletion);
  GraphBuilder loop;
  loop.add_vertex("v", 1);
  loop.add_edge("l", "v", "v");
  // Deleting the loop or lowering the weight drops to genus 1; contracting the
  // loop keeps genus 2 as a single weight-2 vertex.
  const auto small = connected_minors(loop.graph(), 2);
  REQUIRE(small.size() == 1);
  CHECK(small[0].vertex(0).weight == 2);
  bool b2 = false;
  for (const auto& m : connected_minors(fixtures::l3().graph(), 2)) {
    if (find_isomorphism(m, fixtures::b2().graph())) b2 = true;
  }
  CHECK(b2);
}
