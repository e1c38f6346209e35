#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyptype/graph.hpp"
#include "hyptype/io.hpp"

namespace hyptype {

struct SweepItem {
  std::string name;
  TropicalCurve curve;
};

// Outcome of checking the main theorem on one curve.
struct SweepRecord {
  std::string name;
  int genus = 0;
  int edges = 0;
  bool two_connected = false;  // of the stable model
  bool minor_verdict = false;  // no K4 or L3 minor
  std::string obstruction;     // "K4", "L3" or empty
  bool pipeline_success = false;
  bool torelli_ok = false;
  // For 2-connected positives: some lengths make the graph hyperelliptic.
  std::optional<bool> strongly;
  std::string error;  // a size guard or unexpected failure

  bool agree() const {
    return error.empty() && minor_verdict == pipeline_success && (!pipeline_success || torelli_ok);
  }
};

SweepRecord check_theorem(const SweepItem& item);

// Runs check_theorem on every item with a pool of `threads` workers;
// records come back in input order.
std::vector<SweepRecord> run_sweep(const std::vector<SweepItem>& items, int threads);

// All stable graphs with genus in [min_genus, max_genus] and at most
// max_edges edges, one per isomorphism class, with unit lengths.
std::vector<SweepItem> census_items(int min_genus, int max_genus, int max_edges);

// count random stable curves with genus uniform in [2, max_genus].
std::vector<SweepItem> random_items(std::uint64_t seed, int count, int max_genus, int max_edges);

Json record_to_json(const SweepRecord& r);
Json sweep_summary(const std::vector<SweepRecord>& records);

}  // namespace hyptype
