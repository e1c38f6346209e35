#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyptype/graph.hpp"
#include "hyptype/hyperelliptic.hpp"

namespace hyptype {

// A path; vertices.size() == edges.size() + 1 and edges[k] joins
// vertices[k] and vertices[k + 1].
struct Ear {
  std::vector<VertexIndex> vertices;
  std::vector<EdgeIndex> edges;

  VertexIndex front() const { return vertices.front(); }
  VertexIndex back() const { return vertices.back(); }
  int length() const { return static_cast<int>(edges.size()); }
};

enum class EarStage { kEar, kOpen, kNested, kHted, kHed };

const char* stage_name(EarStage stage);
// Throws InputError for unknown names.
EarStage parse_stage(const std::string& name);

struct EarDecomposition {
  std::vector<Ear> ears;
  EarStage stage = EarStage::kEar;
};

// Derived nesting data of a decomposition that passes the kEar checks.
struct Nesting {
  // Per vertex: the ear whose interior contains it, -1 for the ends of E0.
  std::vector<int> owner;
  // Per ear: the ear it is properly nested in, -1 for initial ears.
  std::vector<int> parent;
  // positions[i][v]: index of v along ear i, or -1.
  std::vector<std::vector<int>> positions;

  bool nested_in(const EarDecomposition& d, int j, int i) const;
  // Positions [lo, hi] in ear i of the nest interval of ear j.
  std::pair<int, int> interval(const EarDecomposition& d, int i, int j) const;
  int initial_count() const;
};

Nesting analyze_nesting(const WeightedGraph& g, const EarDecomposition& d);

// Every violated condition for the requested stage (and all weaker ones);
// empty when the decomposition qualifies.
std::vector<std::string> ear_violations(const WeightedGraph& g, const EarDecomposition& d, EarStage stage);
inline bool verify_ears(const WeightedGraph& g, const EarDecomposition& d, EarStage stage) {
  return ear_violations(g, d, stage).empty();
}

// Built from the series-parallel reduction tree; none when g has a K4 minor.
// Requires g loopless, 2-connected, genus >= 1 (InputError otherwise).
std::optional<EarDecomposition> nested_ear_decomposition(const WeightedGraph& g);

// Re-roots the two initial ears until properly nested intervals in each ear
// are totally ordered. Throws PipelineError when that fails, which indicates
// an L3 minor.
EarDecomposition htedify(const WeightedGraph& g, EarDecomposition d);

// Re-roots a HTED of a stable graph so that it has at least three initial
// ears. Throws PipelineError when no suitable ear exists.
EarDecomposition ensure_three_initial_ears(const WeightedGraph& g, EarDecomposition d);

struct HedResult {
  TropicalCurve curve;     // G' with transported lengths
  EarDecomposition ears;   // a HED of G'
  EdgeTrace trace;         // G' -> G, contracting the added edges
  std::vector<EdgeIndex> added_edges;
};

// Subdivides until the HTED (with >= 3 initial ears) becomes a HED. Each new
// edge f forms a separating pair with an existing edge e; the length of e is
// split evenly between e and f.
HedResult hedify(const TropicalCurve& c, EarDecomposition d);

struct HedInvolution {
  Involution involution;
  // Edge pairs exchanged by the involution; equal lengths make it an
  // automorphism of the curve.
  std::vector<std::pair<EdgeIndex, EdgeIndex>> equal_lengths;
};

// Reflects every ear end to end. Throws PipelineError when the HED does not
// produce a well-defined involution with tree quotient.
HedInvolution involution_from_hed(const WeightedGraph& g, const EarDecomposition& d);

}  // namespace hyptype
