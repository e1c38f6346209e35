#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyptype/ears.hpp"
#include "hyptype/graph.hpp"
#include "hyptype/hyperelliptic.hpp"
#include "hyptype/matroid.hpp"
#include "hyptype/minors.hpp"

namespace hyptype {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Q_Γ on a basis of H_1: the fundamental cycles of a BFS spanning tree,
// followed by one null direction per unit of weight.
struct GramMatrix {
  RationalMatrix entries;
  std::vector<EdgeIndex> spanning_tree;
  // Per fundamental cycle: (edge, ±1) with the sign relative to ends[0] -> ends[1].
  std::vector<std::vector<std::pair<EdgeIndex, int>>> cycles;
  int weight_directions = 0;

  int size() const { return static_cast<int>(entries.size()); }
};

GramMatrix jacobian_gram(const TropicalCurve& c);

// Exact Gaussian elimination; 1 for the empty matrix.
Rational determinant(const RationalMatrix& m);

// Sum over spanning trees of the product of the lengths off the tree. Needs
// all weights 0; throws SizeGuardError beyond 2e6 candidate edge sets.
Rational gram_determinant_oracle(const TropicalCurve& c);

// Length-preserving 2-isomorphism between the 3-edge connectivizations,
// which by the tropical Torelli theorem is an isomorphism of Jacobians.
struct TorelliWitness {
  TropicalCurve source3;
  TropicalCurve target3;
  TwoIsomorphism map;  // E(source3) -> E(target3)
};

// Requires genus >= 2 on both sides (InputError).
std::optional<TorelliWitness> jacobians_isomorphic(const TropicalCurve& a, const TropicalCurve& b);
// Recomputes both connectivizations and checks the map against them.
bool verify_torelli_witness(const TropicalCurve& a, const TropicalCurve& b, const TorelliWitness& w);

struct NegativeCertificate {
  Pattern pattern;
  MinorModel model;  // on the input graph
};

struct PositiveCertificate {
  TropicalCurve model;  // hyperelliptic, C1-equivalent to the input
  Involution involution;
  TorelliWitness witness;  // input^3 -> model^3
};

struct HyptypeCertificate {
  bool verdict = false;
  std::optional<NegativeCertificate> negative;
  std::optional<PositiveCertificate> positive;
};

// Verdict from the minor test alone (weights ignored). Requires genus >= 2.
bool hyperelliptic_type_verdict(const WeightedGraph& g);

// Decides on the stable model: a K4 model, else an L3 model, lifted to the
// input; otherwise the constructive certificate. Throws PipelineError when
// the construction disagrees with the minor test.
HyptypeCertificate is_hyperelliptic_type(const TropicalCurve& c);
// Unit lengths; the verdict does not depend on lengths.
HyptypeCertificate is_hyperelliptic_type(const WeightedGraph& g);

// Block-wise construction of a hyperelliptic curve C1-equivalent to c.
// Throws PipelineError when any stage fails (a K4 or L3 minor, or a bug).
PositiveCertificate hyperelliptic_model(const TropicalCurve& c);
// Same, returning none instead of throwing PipelineError.
std::optional<PositiveCertificate> try_hyperelliptic_model(const TropicalCurve& c);

// Empty when the certificate re-verifies against c, else the first problem.
std::string certificate_violation(const TropicalCurve& c, const HyptypeCertificate& cert);

// Edges of gp whose contraction (in any order) gives a graph isomorphic to g,
// or none. Throws SizeGuardError beyond 2e5 candidate edge sets.
std::optional<std::vector<EdgeIndex>> is_specialization(const WeightedGraph& g, const WeightedGraph& gp);

}  // namespace hyptype
