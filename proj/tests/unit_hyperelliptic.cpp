#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "hyptype/connectivity.hpp"
#include "hyptype/hyperelliptic.hpp"
#include "support/fixtures.hpp"

using namespace hyptype;

namespace {

// Every valid involution, by running through all half-edge permutations.
long brute_force_involution_count(const TropicalCurve& c) {
  const auto& g = c.graph();
  std::vector<HalfEdge> perm(2 * g.edge_count());
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    bool involutive = true;
    for (HalfEdge h = 0; h < static_cast<int>(perm.size()) && involutive; ++h) involutive = perm[perm[h]] == h;
    if (!involutive) continue;
    Involution t;
    t.half_edge_map = perm;
    t.vertex_map.assign(g.vertex_count(), -1);
    bool ok = true;
    for (HalfEdge h = 0; h < static_cast<int>(perm.size()) && ok; ++h) {
      const VertexIndex v = g.anchor(h);
      const VertexIndex u = g.anchor(perm[h]);
      ok = t.vertex_map[v] < 0 || t.vertex_map[v] == u;
      t.vertex_map[v] = u;
    }
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (t.vertex_map[v] < 0) t.vertex_map[v] = v;
    }
    if (ok && is_valid_involution(c, t)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

bool brute_force_hyperelliptic(const TropicalCurve& c) {
  for (const auto& t : enumerate_involutions(c)) {
    if (is_hyperelliptic_involution(c, t)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("involution enumeration on fixtures") {
  GraphBuilder loop;
  loop.add_vertex("v", 1);
  loop.add_edge("l", "v", "v");
  CHECK(enumerate_involutions(loop.curve()).size() == 2);

  bool all_flip = false;
  for (const auto& t : enumerate_involutions(fixtures::theta())) {
    if (t.vertex_map[0] == 1 && t.flipped_edges().size() == 3) all_flip = true;
  }
  CHECK(all_flip);

  const auto asym = enumerate_involutions(fixtures::theta(1, 2, 3));
  CHECK(asym.size() == 2);
  for (const auto& t : asym) {
    if (t.vertex_map[0] == 1) CHECK(t.flipped_edges().size() == 3);
  }
}

TEST_CASE("involution enumeration matches brute force on small curves") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto c = random_stable_graph(seed, 2 + seed % 2, 4);
    if (c.graph().edge_count() > 4) continue;
    if (seed % 2) c = TropicalCurve::with_unit_lengths(c.graph());
    const auto all = enumerate_involutions(c);
    CHECK(static_cast<long>(all.size()) == brute_force_involution_count(c));
    for (const auto& t : all) CHECK(is_valid_involution(c, t));
  }
}

TEST_CASE("quotients and fixed points") {
  const auto theta = fixtures::theta();
  Involution flip_all{{1, 0}, {1, 0, 3, 2, 5, 4}};
  REQUIRE(is_valid_involution(theta, flip_all));
  const auto q = quotient(theta, flip_all);
  CHECK(q.quotient.graph().vertex_count() == 1);
  CHECK(q.quotient.graph().edge_count() == 0);
  CHECK(q.fixed_points.size() == 3);
  for (const auto& p : q.fixed_points) CHECK(p.kind == FixedPoint::Kind::kEdgeMidpoint);

  const auto id = Involution::identity(theta.graph());
  const auto qi = quotient(theta, id);
  CHECK(qi.quotient.graph().edge_count() == 3);
  CHECK(qi.quotient.lengths() == theta.lengths());
  CHECK(fixed_points(theta, id).size() == 2);

  const auto bell = fixtures::dumbbell();
  Involution left{{0, 1}, {1, 0, 2, 3, 4, 5}};
  REQUIRE(is_valid_involution(bell, left));
  const auto ql = quotient(bell, left);
  CHECK(ql.quotient.graph().edge_count() == 2);
  CHECK(ql.quotient.length(0) == 2);

  Involution both{{0, 1}, {1, 0, 2, 3, 5, 4}};
  const auto fb = fixed_points(bell, both);
  CHECK(fb.size() == 4);
}

TEST_CASE("hyperelliptic test on fixtures") {
  CHECK(is_hyperelliptic(fixtures::theta(1, 2, 3)));
  CHECK_FALSE(is_hyperelliptic(fixtures::k4()));
  CHECK_FALSE(is_hyperelliptic(fixtures::l3()));
  CHECK(is_hyperelliptic(fixtures::fig1(2, 2)));
  CHECK_FALSE(is_hyperelliptic(fixtures::fig1(1, 3)));
  const auto bell = is_hyperelliptic(fixtures::dumbbell());
  REQUIRE(bell);
  const EdgeIndex bar = bell->model.graph().edge_index("bar");
  CHECK(bell->involution.edge_image(bar) == bar);
  CHECK_FALSE(bell->involution.flips(bar));
}

TEST_CASE("pruned hyperelliptic search agrees with exhaustive enumeration") {
  int positives = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto c = random_stable_graph(seed, 2 + seed % 3, 9);
    if (seed % 3 == 0) c = TropicalCurve::with_unit_lengths(c.graph());
    const bool fast = hyperelliptic_involution(c).has_value();
    CHECK(fast == brute_force_hyperelliptic(c));
    positives += fast;
  }
  CHECK(positives > 10);
}

TEST_CASE("hyperelliptic curves: quotient is a tree and separating edges are fixed") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const auto c = TropicalCurve::with_unit_lengths(random_stable_graph(seed, 2 + seed % 4, 10).graph());
    const auto t = hyperelliptic_involution(c);
    if (!t) continue;
    const auto q = quotient(c, *t);
    CHECK(q.quotient.graph().edge_count() == q.quotient.graph().vertex_count() - 1);
    for (EdgeIndex e : separating_edges(c.graph())) {
      CHECK(t->edge_image(e) == e);
      CHECK_FALSE(t->flips(e));
    }
  }
}

TEST_CASE("length averaging") {
  const auto averaged = hyperelliptify_lengths(fixtures::fig1(1, 3));
  CHECK(averaged == fixtures::fig1(2, 2));
  const auto t = hyperelliptic_involution(averaged);
  REQUIRE(t);
  CHECK(t->edge_image(0) == 1);
  CHECK(t->flips(2));
  CHECK(t->flips(3));
  CHECK(hyperelliptify_lengths(fixtures::theta(1, 2, 3)) == fixtures::theta(1, 2, 3));
  CHECK(hyperelliptify_lengths(fixtures::fig1(2, 2)) == fixtures::fig1(2, 2));
}

TEST_CASE("wedge sums") {
  GraphBuilder loop;
  loop.add_vertex("v");
  loop.add_edge("l", "v", "v", 2);
  const auto two = wedge(loop.curve(), WedgePoint::at_vertex("v"), loop.curve(), WedgePoint::at_vertex("v"));
  CHECK(two.graph().vertex_count() == 1);
  CHECK(genus(two) == 2);
  CHECK(two.graph().edge(1).id == "l'");

  const auto a = wedge(fixtures::theta(1, 2, 3), WedgePoint::at_vertex("x"), loop.curve(), WedgePoint::at_vertex("v"));
  const auto b = wedge(fixtures::theta(1, 2, 3), WedgePoint::on_edge("e2", Rational(1, 2)), loop.curve(),
                       WedgePoint::on_edge("l", 1));
  CHECK(genus(a) == 3);
  CHECK(genus(b) == 3);
  CHECK(c1_equivalent(a, b));

  GraphBuilder tree;
  tree.add_vertex("r");
  tree.add_vertex("s");
  tree.add_edge("t", "r", "s");
  const auto with_tree = wedge(fixtures::theta(), WedgePoint::at_vertex("x"), tree.curve(), WedgePoint::at_vertex("r"));
  CHECK(stable_model(with_tree).first == fixtures::theta());
}

TEST_CASE("strongly hyperelliptic type") {
  CHECK(is_strongly_hyperelliptic_type(fixtures::theta().graph()));
  CHECK(is_strongly_hyperelliptic_type(fixtures::fig1(1, 3).graph()));
  CHECK_FALSE(is_strongly_hyperelliptic_type(fixtures::k4().graph()));
  CHECK_FALSE(is_strongly_hyperelliptic_type(fixtures::b2().graph()));
}
