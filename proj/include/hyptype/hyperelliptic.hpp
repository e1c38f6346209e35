#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyptype/graph.hpp"

namespace hyptype {

// Graph involution given on vertices and half-edges.
struct Involution {
  std::vector<VertexIndex> vertex_map;
  std::vector<HalfEdge> half_edge_map;

  static Involution identity(const WeightedGraph& g);
  EdgeIndex edge_image(EdgeIndex e) const { return half_edge_map[2 * e] / 2; }
  bool flips(EdgeIndex e) const { return half_edge_map[2 * e] == 2 * e + 1; }
  std::vector<EdgeIndex> flipped_edges() const;
  bool is_identity() const;

  friend bool operator==(const Involution&, const Involution&) = default;
};

// Order <= 2, compatible with incidence, weights and lengths. Empty string
// when valid, otherwise the first violation found.
std::string involution_violation(const TropicalCurve& c, const Involution& t);
inline bool is_valid_involution(const TropicalCurve& c, const Involution& t) {
  return involution_violation(c, t).empty();
}

struct InvolutionFilter {
  // Only involutions fixing every positive-weight vertex whose quotient can
  // still be a tree (prunes loops in the quotient and doubled quotient edges).
  bool hyperelliptic_only = false;
  // Require every separating edge to be fixed pointwise.
  bool fix_separating_edges = false;
};

// Visits every involution in a deterministic order until visit returns false.
// Throws SizeGuardError beyond 24 vertices or 40 edges.
void for_each_involution(const TropicalCurve& c, const InvolutionFilter& filter,
                         const std::function<bool(const Involution&)>& visit);
std::vector<Involution> enumerate_involutions(const TropicalCurve& c);

struct FixedPoint {
  enum class Kind { kVertex, kEdgeMidpoint };
  Kind kind = Kind::kVertex;
  int index = -1;  // vertex or flipped edge

  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;
};

std::vector<FixedPoint> fixed_points(const TropicalCurve& c, const Involution& t);

struct QuotientResult {
  TropicalCurve quotient;
  std::vector<VertexIndex> vertex_projection;
  // Non-flipped edges map to quotient edges, flipped ones to quotient vertices.
  std::vector<EdgeImage> edge_projection;
  std::vector<FixedPoint> fixed_points;
};

// Throws InputError for an invalid involution.
QuotientResult quotient(const TropicalCurve& c, const Involution& t);

// Fixes positive-weight vertices and has a tree quotient.
bool is_hyperelliptic_involution(const TropicalCurve& c, const Involution& t);

// The hyperelliptic involution of a stable curve (fixing separating edges
// pointwise), if the curve is hyperelliptic.
std::optional<Involution> hyperelliptic_involution(const TropicalCurve& stable);

struct HyperellipticStructure {
  TropicalCurve model;  // stable model of the input
  EdgeTrace trace;      // input -> model
  Involution involution;
};

// Requires genus >= 2; decides on the stable model.
std::optional<HyperellipticStructure> is_hyperelliptic(const TropicalCurve& c);

// Lengths averaged over each C1-set; separating edges untouched.
TropicalCurve hyperelliptify_lengths(const TropicalCurve& c);

// Some choice of lengths makes the (stable) graph hyperelliptic. Decided with
// unit lengths: an involution preserves any length function constant on its
// edge orbits, so unit lengths admit every candidate.
bool is_strongly_hyperelliptic_type(const WeightedGraph& g);

// A vertex, or a point at distance offset from ends[0] along an edge
// (0 < offset < length).
struct WedgePoint {
  std::string vertex;
  std::string edge;
  Rational offset = 0;

  static WedgePoint at_vertex(std::string id) { return {std::move(id), {}, 0}; }
  static WedgePoint on_edge(std::string id, Rational offset) { return {{}, std::move(id), std::move(offset)}; }
};

// Subdivides at a point when needed and returns the curve with the vertex
// index of the point.
std::pair<TropicalCurve, VertexIndex> materialize_point(const TropicalCurve& c, const WedgePoint& p);

// One-point union. Identifiers of b that collide with a get a "'" suffix.
TropicalCurve wedge(const TropicalCurve& a, const WedgePoint& pa, const TropicalCurve& b, const WedgePoint& pb);

}  // namespace hyptype
