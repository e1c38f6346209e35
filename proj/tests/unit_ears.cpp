#include <set>

#include "doctest.h"
#include "hyptype/connectivity.hpp"
#include "hyptype/ears.hpp"
#include "hyptype/errors.hpp"
#include "hyptype/hyperelliptic.hpp"
#include "hyptype/isomorphism.hpp"
#include "hyptype/minors.hpp"
#include "support/fixtures.hpp"

using namespace hyptype;

namespace {

Ear ear_of(const WeightedGraph& g, std::vector<std::string> vertices, std::vector<std::string> edges) {
  Ear ear;
  for (const auto& v : vertices) ear.vertices.push_back(g.vertex_index(v));
  for (const auto& e : edges) ear.edges.push_back(g.edge_index(e));
  return ear;
}

// The decomposition of B2 a series-parallel trace would naturally give.
EarDecomposition b2_nested(const WeightedGraph& g) {
  EarDecomposition d;
  d.ears.push_back(ear_of(g, {"u", "w"}, {"uw"}));
  d.ears.push_back(ear_of(g, {"u", "v", "w"}, {"uv1", "vw1"}));
  d.ears.push_back(ear_of(g, {"u", "v"}, {"uv2"}));
  d.ears.push_back(ear_of(g, {"v", "w"}, {"vw2"}));
  return d;
}

// Quotient is a tree iff (orbits of edges not flipped) - (vertex orbits) + 1 == 0;
// a flipped edge folds onto a segment with a free end and adds no cycle.
bool orbit_count_tree(const WeightedGraph& g, const Involution& t) {
  int vertex_orbits = 0, edge_orbits = 0;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) vertex_orbits += t.vertex_map[v] >= v;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!t.flips(e)) edge_orbits += t.edge_image(e) >= e;
  }
  return edge_orbits - vertex_orbits + 1 == 0;
}

struct PipelineRun {
  HedResult hed;
  HedInvolution involution;
};

PipelineRun run_pipeline(const TropicalCurve& c) {
  auto nested = nested_ear_decomposition(c.graph());
  REQUIRE(nested);
  auto hted = htedify(c.graph(), *nested);
  auto three = ensure_three_initial_ears(c.graph(), hted);
  auto hed = hedify(c, three);
  auto inv = involution_from_hed(hed.curve.graph(), hed.ears);
  return {std::move(hed), std::move(inv)};
}

}  // namespace

TEST_CASE("theta: three initial ears, already a HED, all edges flipped") {
  const auto c = fixtures::theta();
  const auto d = nested_ear_decomposition(c.graph());
  REQUIRE(d);
  CHECK(d->ears.size() == 3);
  for (const auto& ear : d->ears) CHECK(ear.length() == 1);
  CHECK(verify_ears(c.graph(), *d, EarStage::kHed));
  CHECK(analyze_nesting(c.graph(), *d).initial_count() == 3);

  const auto run = run_pipeline(c);
  CHECK(run.hed.added_edges.empty());
  CHECK(run.hed.curve == c);
  CHECK(run.involution.involution.flipped_edges() == std::vector<EdgeIndex>{0, 1, 2});
  CHECK(run.involution.equal_lengths.empty());
  const auto q = quotient(c, run.involution.involution);
  CHECK(q.quotient.graph().vertex_count() == 1);
}

TEST_CASE("K4 has no nested ear decomposition") {
  CHECK_FALSE(nested_ear_decomposition(fixtures::k4().graph()));
}

TEST_CASE("nested_ear_decomposition preconditions") {
  CHECK_THROWS_AS(nested_ear_decomposition(fixtures::dumbbell().graph()), InputError);
  GraphBuilder tree;
  tree.add_vertex("a");
  tree.add_vertex("b");
  tree.add_edge("ab", "a", "b");
  CHECK_THROWS_AS(nested_ear_decomposition(tree.graph()), InputError);
}

TEST_CASE("a cycle is a nested decomposition with two ears") {
  const auto c = fixtures::cycle(5, 1);
  const auto d = nested_ear_decomposition(c.graph());
  REQUIRE(d);
  CHECK(d->ears.size() == 2);
  CHECK(verify_ears(c.graph(), *d, EarStage::kNested));
}

TEST_CASE("B2: the natural decomposition is nested but not HTED") {
  const auto g = fixtures::b2().graph();
  const auto d = b2_nested(g);
  CHECK(verify_ears(g, d, EarStage::kNested));
  const auto problems = ear_violations(g, d, EarStage::kHted);
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("E2 and E3") != std::string::npos);
  const auto n = analyze_nesting(g, d);
  CHECK(n.parent == std::vector<int>{-1, -1, 1, 1});
}

TEST_CASE("B2: htedify applies one re-rooting move") {
  const auto g = fixtures::b2().graph();
  const auto h = htedify(g, b2_nested(g));
  CHECK(h.stage == EarStage::kHted);
  CHECK(verify_ears(g, h, EarStage::kHted));
  // E0' runs u-w then w-v, E1' is the first u-v edge.
  CHECK(h.ears[0].edges == std::vector<EdgeIndex>{g.edge_index("uw"), g.edge_index("vw1")});
  CHECK(h.ears[1].edges == std::vector<EdgeIndex>{g.edge_index("uv1")});
  const auto n = analyze_nesting(g, h);
  CHECK(n.parent[3] == 0);
  CHECK(n.initial_count() == 3);
}

TEST_CASE("htedify leaves a HTED unchanged") {
  const auto g = fixtures::theta().graph();
  const auto d = *nested_ear_decomposition(g);
  const auto h = htedify(g, d);
  for (std::size_t i = 0; i < d.ears.size(); ++i) CHECK(h.ears[i].edges == d.ears[i].edges);
}

TEST_CASE("ensure_three_initial_ears re-roots at an ear ending at s") {
  // Theta with the middle edge subdivided twice and an ear between the
  // two new vertices has exactly two initial ears in the natural order.
  GraphBuilder b;
  for (auto v : {"s", "t", "p", "q"}) b.add_vertex(v);
  b.add_edge("st", "s", "t");
  b.add_edge("sp", "s", "p");
  b.add_edge("pq", "p", "q");
  b.add_edge("qt", "q", "t");
  b.add_edge("sq", "s", "q");
  b.add_edge("pt", "p", "t");
  const auto g = b.graph();
  EarDecomposition d;
  d.ears.push_back(ear_of(g, {"s", "p", "q", "t"}, {"sp", "pq", "qt"}));
  d.ears.push_back(ear_of(g, {"s", "t"}, {"st"}));
  d.ears.push_back(ear_of(g, {"s", "q"}, {"sq"}));
  d.ears.push_back(ear_of(g, {"p", "t"}, {"pt"}));
  // This graph is K4, so nesting must fail.
  CHECK_FALSE(verify_ears(g, d, EarStage::kNested));

  const auto c = fixtures::b2();
  const auto h = htedify(c.graph(), b2_nested(c.graph()));
  const auto three = ensure_three_initial_ears(c.graph(), h);
  CHECK(verify_ears(c.graph(), three, EarStage::kHted));
  CHECK(analyze_nesting(c.graph(), three).initial_count() >= 3);
}

TEST_CASE("B2: hedify subdivides once and yields a trivalent HED") {
  const auto c = fixtures::b2();
  const auto run = run_pipeline(c);
  const auto& gp = run.hed.curve.graph();
  CHECK(run.hed.added_edges.size() == 1);
  CHECK(gp.edge_count() == 6);
  CHECK(gp.vertex_count() == 4);
  for (VertexIndex v = 0; v < gp.vertex_count(); ++v) CHECK(gp.valence(v) == 3);
  CHECK(verify_ears(gp, run.hed.ears, EarStage::kHed));
  CHECK(d_invariant(gp) == d_invariant(c.graph()) - 1);

  // Contracting the new edge gives B2 back.
  const auto [back, trace] = contract_edge(run.hed.curve, run.hed.added_edges[0]);
  CHECK(find_isomorphism(back.graph(), c.graph()));

  // The new edge and its partner form a separating pair.
  const auto part = c1_sets(gp);
  const EdgeIndex f = run.hed.added_edges[0];
  REQUIRE(part.set_of[f] >= 0);
  CHECK(part.sets[part.set_of[f]].size() == 2);

  const auto& t = run.involution.involution;
  CHECK(orbit_count_tree(gp, t));
  CHECK(t.flipped_edges().size() == 4);
  REQUIRE(run.involution.equal_lengths.size() == 1);
  const auto [e1, e2] = run.involution.equal_lengths[0];
  CHECK(std::set<EdgeIndex>{e1, e2} == std::set<EdgeIndex>(part.sets[part.set_of[f]].begin(), part.sets[part.set_of[f]].end()));
}

TEST_CASE("hedify transports lengths within a C1-set") {
  const auto c = fixtures::b2();
  TropicalCurve lengthy(c.graph(), {Rational(2), Rational(3), Rational(5), Rational(7), Rational(11)});
  const auto run = run_pipeline(lengthy);
  CHECK(c1_equivalent(lengthy, run.hed.curve));
  CHECK(run.hed.curve.total_length() == lengthy.total_length());
}

TEST_CASE("violation reports") {
  const auto g = fixtures::b2().graph();
  auto d = b2_nested(g);
  d.ears.pop_back();
  CHECK_FALSE(ear_violations(g, d, EarStage::kEar).empty());
  auto closed = b2_nested(g);
  std::swap(closed.ears[0], closed.ears[1]);
  CHECK(verify_ears(g, closed, EarStage::kNested));
  EarDecomposition wrong_order;
  wrong_order.ears = {b2_nested(g).ears[2], b2_nested(g).ears[0], b2_nested(g).ears[1], b2_nested(g).ears[3]};
  CHECK_FALSE(verify_ears(g, wrong_order, EarStage::kEar));
  EarDecomposition stale = b2_nested(g);
  std::swap(stale.ears[1], stale.ears[3]);
  CHECK_FALSE(verify_ears(g, stale, EarStage::kEar));
  CHECK(parse_stage("hted") == EarStage::kHted);
  CHECK_THROWS_AS(parse_stage("bogus"), InputError);
}

TEST_CASE("pipeline succeeds exactly on K4/L3-free 2-connected stable graphs") {
  int positive = 0, negative = 0;
  for (int g = 2; g <= 3; ++g) {
    for (const auto& graph : enumerate_stable_graphs(g, 3 * g - 3)) {
      if (!is_two_connected(graph)) continue;
      const auto c = TropicalCurve::with_unit_lengths(graph);
      const bool minor = find_minor_model(graph, k4_pattern()) || find_minor_model(graph, l3_pattern());
      if (minor) {
        ++negative;
        continue;
      }
      ++positive;
      const auto run = run_pipeline(c);
      const auto& gp = run.hed.curve.graph();
      CHECK(verify_ears(gp, run.hed.ears, EarStage::kHed));
      CHECK(orbit_count_tree(gp, run.involution.involution));
      CHECK(d_invariant(c.graph()) - d_invariant(gp) == static_cast<int>(run.hed.added_edges.size()));
      const auto even = hyperelliptify_lengths(run.hed.curve);
      CHECK(is_valid_involution(even, run.involution.involution));
      CHECK(c1_equivalent(c, even));
    }
  }
  CHECK(positive > 0);
  CHECK(negative > 0);
}

TEST_CASE("property: random 2-connected curves") {
  int positive = 0;
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto raw = random_two_connected_curve(seed, 11);
    if (genus(raw) < 2) continue;
    const auto c = stable_model(raw).first;
    const bool sp = static_cast<bool>(nested_ear_decomposition(c.graph()));
    CHECK(sp == !find_minor_model(c.graph(), k4_pattern()).has_value());
    if (!sp || find_minor_model(c.graph(), l3_pattern())) continue;
    ++positive;
    const auto run = run_pipeline(c);
    const auto& gp = run.hed.curve.graph();
    CHECK(orbit_count_tree(gp, run.involution.involution));
    CHECK(is_stable(gp));
    for (const auto& [a, b] : run.involution.equal_lengths) {
      const auto part = c1_sets(gp);
      CHECK(part.set_of[a] >= 0);
      CHECK(part.set_of[a] == part.set_of[b]);
    }
    const auto even = hyperelliptify_lengths(run.hed.curve);
    CHECK(is_valid_involution(even, run.involution.involution));
    CHECK(c1_equivalent(c, even));
  }
  CHECK(positive > 10);
}
