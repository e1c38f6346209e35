#include "hyptype/sweep.hpp"

#include <atomic>
#include <thread>

#include "hyptype/decision.hpp"
#include "hyptype/errors.hpp"
#include "hyptype/hyperelliptic.hpp"
#include "hyptype/isomorphism.hpp"

namespace hyptype {

SweepRecord check_theorem(const SweepItem& item) {
  SweepRecord r;
  r.name = item.name;
  r.genus = genus(item.curve);
  r.edges = item.curve.graph().edge_count();
  try {
    const auto stable = stable_model(item.curve).first;
    r.two_connected = is_two_connected(stable.graph());
    const auto cert = is_hyperelliptic_type(item.curve);
    r.minor_verdict = cert.verdict;
    if (cert.negative) r.obstruction = cert.negative->pattern.name;
    // The construction runs regardless of the verdict; on a negative it must fail.
    const auto model = cert.positive ? cert.positive : try_hyperelliptic_model(item.curve);
    r.pipeline_success = model.has_value();
    if (model) {
      r.torelli_ok = verify_torelli_witness(item.curve, model->model, model->witness) &&
                     is_valid_involution(model->model, model->involution) &&
                     is_hyperelliptic_involution(model->model, model->involution);
    }
    if (r.minor_verdict && r.two_connected) r.strongly = is_strongly_hyperelliptic_type(stable.graph());
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<SweepRecord> run_sweep(const std::vector<SweepItem>& items, int threads) {
  std::vector<SweepRecord> out(items.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < items.size(); k = next++) out[k] = check_theorem(items[k]);
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(items.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<SweepItem> census_items(int min_genus, int max_genus, int max_edges) {
  std::vector<SweepItem> out;
  for (int g = std::max(2, min_genus); g <= max_genus; ++g) {
    int k = 0;
    for (auto& graph : enumerate_stable_graphs(g, max_edges)) {
      out.push_back({"census-g" + std::to_string(g) + "-" + std::to_string(k++),
                     TropicalCurve::with_unit_lengths(std::move(graph))});
    }
  }
  return out;
}

std::vector<SweepItem> random_items(std::uint64_t seed, int count, int max_genus, int max_edges) {
  std::vector<SweepItem> out;
  for (int k = 0; k < count; ++k) {
    const std::uint64_t s = seed * 1000003u + static_cast<std::uint64_t>(k);
    const int g = 2 + static_cast<int>(s % static_cast<std::uint64_t>(std::max(1, max_genus - 1)));
    out.push_back({"random-" + std::to_string(s), random_stable_graph(s, g, max_edges)});
  }
  return out;
}

Json record_to_json(const SweepRecord& r) {
  Json out = {{"name", r.name},
              {"genus", r.genus},
              {"edges", r.edges},
              {"two_connected", r.two_connected},
              {"minor_verdict", r.minor_verdict},
              {"obstruction", r.obstruction.empty() ? Json(nullptr) : Json(r.obstruction)},
              {"pipeline_success", r.pipeline_success},
              {"torelli_ok", r.torelli_ok},
              {"strongly", r.strongly ? Json(*r.strongly) : Json(nullptr)},
              {"agree", r.agree()}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

Json sweep_summary(const std::vector<SweepRecord>& records) {
  int agree = 0, positive = 0, k4 = 0, l3 = 0, errors = 0;
  Json not_strongly = Json::array();
  for (const auto& r : records) {
    agree += r.agree();
    positive += r.minor_verdict;
    k4 += r.obstruction == "K4";
    l3 += r.obstruction == "L3";
    errors += !r.error.empty();
    if (r.strongly && !*r.strongly) not_strongly.push_back(r.name);
  }
  return {{"total", records.size()}, {"agree", agree},       {"positive", positive},
          {"k4", k4},                {"l3", l3},             {"errors", errors},
          {"not_strongly_hyperelliptic", not_strongly}};
}

}  // namespace hyptype
