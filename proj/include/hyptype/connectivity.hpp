#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hyptype/graph.hpp"
#include "hyptype/matroid.hpp"

namespace hyptype {

// Bridges, in increasing index order.
std::vector<EdgeIndex> separating_edges(const WeightedGraph& g);

struct C1Partition {
  // Each set sorted; sets ordered by their smallest edge.
  std::vector<std::vector<EdgeIndex>> sets;
  // Per edge: index into sets, or -1 for a separating edge.
  std::vector<int> set_of;
};

C1Partition c1_sets(const WeightedGraph& g);

// Contracts every edge of s_prime except e0, which receives the total length.
// Throws InputError unless s_prime lies in one C1-set and contains e0.
std::pair<TropicalCurve, EdgeTrace> apply_move_c_prime(const TropicalCurve& c, std::span<const EdgeIndex> s_prime,
                                                       EdgeIndex e0);

struct Connectivization {
  TropicalCurve result;
  EdgeTrace trace;  // source -> result
  // Per source edge: the result edge it stands for, -1 for separating edges.
  std::vector<EdgeIndex> psi;
  C1Partition partition;  // of the source
  // Per C1-set of the source: its edge in the result.
  std::vector<EdgeIndex> set_edge;
};

Connectivization two_edge_connectivization(const TropicalCurve& c);
// Each C1-set collapses onto its smallest-index edge.
Connectivization three_edge_connectivization(const TropicalCurve& c);

// Given a 2-isomorphism w : E(G^3) -> E(G'^3), the induced bijection on
// C1-sets, indexed by the C1-sets of G' and valued in C1-sets of G.
std::vector<int> induced_c1_bijection(const TwoIsomorphism& w, const Connectivization& g3,
                                      const Connectivization& gp3);

// Length-preserving 2-isomorphism between the 3-edge connectivizations, when
// the genera agree and one exists.
std::optional<TwoIsomorphism> c1_equivalent(const TropicalCurve& a, const TropicalCurve& b);

// Lengths on G' making it C1-equivalent to (G, lengths): each edge of a C1-set
// S' of G' gets the total length of beta(S') divided by |S'|. Separating edges
// of G' get separating_length.
std::vector<Rational> transport_lengths(const TropicalCurve& source, const Connectivization& source3,
                                        const WeightedGraph& target, const Connectivization& target3,
                                        const std::vector<int>& beta, const Rational& separating_length = 1);

}  // namespace hyptype
