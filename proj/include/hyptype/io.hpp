#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hyptype/connectivity.hpp"
#include "hyptype/decision.hpp"
#include "hyptype/ears.hpp"
#include "hyptype/graph.hpp"
#include "hyptype/hyperelliptic.hpp"
#include "hyptype/minors.hpp"

namespace hyptype {

using Json = nlohmann::ordered_json;

struct ParsedCurve {
  TropicalCurve curve;
  std::vector<std::string> warnings;  // e.g. defaulted lengths
};

// Graph document: {"vertices": [{"id", "weight"?}], "edges": [{"id", "ends",
// "length"?}]}. Lengths are "n" or "p/q" strings (integers also accepted);
// absent lengths default to 1 with a warning. Errors name the offending path.
ParsedCurve parse_curve(const Json& doc);
ParsedCurve read_curve_file(const std::string& path);
Json read_json_file(const std::string& path);

// Canonical document: every field present, lengths in lowest terms.
Json to_json(const TropicalCurve& c);

// {"vertices": {id: id}, "edges": [{"edge", "image", "reversed"}]}; reversed
// means ends[0] of edge goes to ends[1] of image.
Json involution_to_json(const WeightedGraph& g, const Involution& t);
Involution involution_from_json(const WeightedGraph& g, const Json& doc);

Json minor_to_json(const WeightedGraph& host, const Pattern& pattern, const MinorModel& model);
MinorModel minor_from_json(const WeightedGraph& host, const Json& doc);
// "k4", "l3" or a graph document file.
Pattern pattern_from_name(const std::string& name);

Json trace_to_json(const WeightedGraph& source, const WeightedGraph& target, const EdgeTrace& trace);
Json c1_sets_to_json(const WeightedGraph& g, const C1Partition& p);
Json blocks_to_json(const WeightedGraph& g);

Json ears_to_json(const WeightedGraph& g, const EarDecomposition& d);
EarDecomposition ears_from_json(const WeightedGraph& g, const Json& doc);

Json witness_to_json(const TorelliWitness& w);
TorelliWitness witness_from_json(const Json& doc);

Json certificate_to_json(const TropicalCurve& c, const HyptypeCertificate& cert);
HyptypeCertificate certificate_from_json(const TropicalCurve& c, const Json& doc);

}  // namespace hyptype
