#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hyptype/graph.hpp"

namespace hyptype {

using EdgeMask = std::uint64_t;

// Cycle matroid of G with |w| extra loops. Ground elements 0..m-1 are the
// edges of G, m..m+|w|-1 the weight markers. Every marker is a singleton
// circuit.
struct CycleMatroid {
  int edge_count = 0;
  int weight_loops = 0;
  std::vector<EdgeMask> circuits;

  int ground_size() const { return edge_count + weight_loops; }
};

// Throws SizeGuardError beyond 16 independent cycles or 64 ground elements.
CycleMatroid circuits(const WeightedGraph& g);

struct TwoIsomorphism {
  std::vector<EdgeIndex> edge_map;  // E(a) -> E(b)
  bool length_preserving = false;
};

std::optional<TwoIsomorphism> find_two_isomorphism(const WeightedGraph& a, const WeightedGraph& b);
std::optional<TwoIsomorphism> find_two_isomorphism(const TropicalCurve& a, const TropicalCurve& b,
                                                   bool length_preserving = true);

// Calls visit for every 2-isomorphism edge bijection a -> b until it returns
// false. Returns the number of bijections visited.
long for_each_two_isomorphism(const TropicalCurve& a, const TropicalCurve& b, bool length_preserving,
                              const std::function<bool(const std::vector<EdgeIndex>&)>& visit);

// Independent check of a claimed witness: bijective, circuits to circuits,
// equal |w|, and lengths when the witness claims to preserve them.
bool verify_two_isomorphism(const TropicalCurve& a, const TropicalCurve& b, const TwoIsomorphism& w);

}  // namespace hyptype
