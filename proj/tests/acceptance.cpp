// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <thread>

#include "hyptype/connectivity.hpp"
#include "hyptype/decision.hpp"
#include "hyptype/ears.hpp"
#include "hyptype/hyperelliptic.hpp"
#include "hyptype/isomorphism.hpp"
#include "hyptype/minors.hpp"
#include "hyptype/sweep.hpp"
#include "support/fixtures.hpp"

using namespace hyptype;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  failures += !out.pass;
  std::printf("%s criterion %d (%s): %s [%.2fs]\n", out.pass ? "PASS" : "FAIL", number, title.c_str(),
              out.detail.c_str(), seconds_since(start));
  std::fflush(stdout);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) { return seed * 0x9E3779B97F4A7C15ull + k * 1000003ull + 1; }

// Random 2-connected stable graphs with no K4 or L3 minor, with unit lengths.
std::vector<TropicalCurve> hyperelliptic_type_blocks(int wanted, int max_edges) {
  std::vector<TropicalCurve> out;
  for (std::uint64_t seed = 1; static_cast<int>(out.size()) < wanted && seed < 100000; ++seed) {
    const auto raw = random_two_connected_curve(mix(17, seed), max_edges);
    if (genus(raw) < 2) continue;
    const auto stable = stable_model(raw).first;
    if (!hyperelliptic_type_verdict(stable.graph())) continue;
    out.push_back(TropicalCurve::with_unit_lengths(stable.graph()));
  }
  return out;
}

Outcome fixtures_criterion() {
  std::string detail;
  double slowest = 0;
  const std::vector<std::pair<std::string, TropicalCurve>> cases = {
      {"K4", fixtures::k4()},         {"L3", fixtures::l3()}, {"THETA", fixtures::theta()},
      {"FIG1(1,3)", fixtures::fig1(1, 3)}, {"B2", fixtures::b2()}};
  bool ok = true;
  for (const auto& [name, c] : cases) {
    const auto start = Clock::now();
    const auto cert = is_hyperelliptic_type(c);
    const bool verified = certificate_violation(c, cert).empty();
    slowest = std::max(slowest, seconds_since(start));
    const bool expected = name != "K4" && name != "L3";
    const bool right = cert.verdict == expected && verified &&
                       (expected || cert.negative->pattern.name == name);
    ok = ok && right;
    detail += name + "=" + (cert.verdict ? "true" : "false") + (verified ? "(verified) " : "(UNVERIFIED) ");
  }
  ok = ok && slowest < 1.0;
  detail += "slowest " + std::to_string(slowest) + "s";
  return {ok, detail};
}

std::vector<SweepRecord> sweep_records;

Outcome sweep_criterion() {
  auto items = census_items(2, 3, 8);
  const std::size_t census = items.size();
  auto extra = random_items(2024, 600, 5, 12);
  items.insert(items.end(), extra.begin(), extra.end());
  const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto start = Clock::now();
  sweep_records = run_sweep(items, threads);
  const double elapsed = seconds_since(start);
  const Json s = sweep_summary(sweep_records);
  std::string first_bad;
  for (const auto& r : sweep_records) {
    if (!r.agree() && first_bad.empty()) first_bad = " first disagreement: " + r.name + " " + r.error;
  }
  const bool ok = s["agree"] == s["total"] && elapsed < 600 && census > 0;
  return {ok, std::to_string(census) + " census + " + std::to_string(extra.size()) + " random; agree " +
                  s["agree"].dump() + "/" + s["total"].dump() + ", positive " + s["positive"].dump() + ", K4 " +
                  s["k4"].dump() + ", L3 " + s["l3"].dump() + first_bad};
}

Outcome series_parallel_criterion() {
  int agree = 0, total = 0, sp = 0;
  for (std::uint64_t seed = 1; total < 400; ++seed) {
    const auto c = random_two_connected_curve(mix(3, seed), 12);
    ++total;
    const bool is_sp = is_series_parallel(c.graph());
    sp += is_sp;
    agree += is_sp == !find_minor_model(c.graph(), k4_pattern()).has_value();
  }
  return {agree == total && total >= 300 && sp > 0 && sp < total,
          std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(sp) + " series-parallel)"};
}

Outcome torelli_criterion() {
  const auto a = fixtures::fig1(1, 3), b = fixtures::fig1(2, 2);
  const auto w = jacobians_isomorphic(a, b);
  const Rational da = determinant(jacobian_gram(a).entries), db = determinant(jacobian_gram(b).entries);
  const Rational oa = gram_determinant_oracle(a), ob = gram_determinant_oracle(b);
  const bool theta = !jacobians_isomorphic(fixtures::theta(1, 1, 1), fixtures::theta(1, 1, 2)).has_value();
  const bool ok = w && verify_torelli_witness(a, b, *w) && da == db && da == oa && db == ob && theta;
  return {ok, std::string("FIG1 pair isomorphic=") + (w ? "true" : "false") + ", det " + format_rational(da) + " / " +
                  format_rational(db) + " (oracle " + format_rational(oa) + "), THETA pair isomorphic=" +
                  (theta ? "false" : "true")};
}

Outcome c1_structure_criterion() {
  int curves = 0, good = 0;
  for (const auto& block : hyperelliptic_type_blocks(150, 12)) {
    const HedResult hed = hedify(block, ensure_three_initial_ears(block.graph(), htedify(block.graph(),
                                                                  *nested_ear_decomposition(block.graph()))));
    const HedInvolution inv = involution_from_hed(hed.curve.graph(), hed.ears);
    const Involution& t = inv.involution;
    // Random lengths constant on edge orbits of t.
    std::vector<Rational> lengths(hed.curve.graph().edge_count());
    for (EdgeIndex e = 0; e < static_cast<EdgeIndex>(lengths.size()); ++e) {
      const EdgeIndex partner = t.edge_image(e);
      lengths[e] = partner < e ? lengths[partner] : Rational(1 + (e * 7 + curves) % 5, 1 + e % 3);
    }
    const TropicalCurve curve(hed.curve.graph(), lengths);
    ++curves;
    if (!is_valid_involution(curve, t) || !is_hyperelliptic_involution(curve, t)) continue;
    const auto found = hyperelliptic_involution(curve);
    if (!found || !(*found == t)) continue;
    bool all = true;
    for (const auto& set : c1_sets(curve.graph()).sets) {
      const bool single = set.size() == 1 && t.flips(set[0]);
      const bool pair = set.size() == 2 && t.edge_image(set[0]) == set[1];
      all = all && (single || pair);
    }
    good += all;
  }
  return {curves >= 100 && good == curves, std::to_string(good) + "/" + std::to_string(curves) + " curves"};
}

Outcome edge_removal_criterion() {
  int pairs = 0, good = 0;
  for (std::uint64_t seed = 1; pairs < 250 && seed < 10000; ++seed) {
    const auto c = random_stable_graph(mix(5, seed), 2 + seed % 4, 12);
    const auto separating = separating_edges(c.graph());
    std::vector<EdgeIndex> candidates;
    for (EdgeIndex e = 0; e < c.graph().edge_count(); ++e) {
      if (std::find(separating.begin(), separating.end(), e) == separating.end()) candidates.push_back(e);
    }
    if (candidates.empty()) continue;
    const EdgeIndex e = candidates[seed % candidates.size()];
    const Connectivization c3 = three_edge_connectivization(c);
    const auto lhs = three_edge_connectivization(delete_edge(c3.result, c3.psi[e])).result;
    const auto rhs = three_edge_connectivization(delete_edge(c, e)).result;
    ++pairs;
    const auto w = find_two_isomorphism(lhs, rhs, true);
    good += w && verify_two_isomorphism(lhs, rhs, *w);
  }
  return {pairs >= 200 && good == pairs, std::to_string(good) + "/" + std::to_string(pairs) + " pairs"};
}

Outcome closure_criterion() {
  int curves = 0, minors = 0, closed = 0, relabelled = 0, stable_verdict = 0;
  for (std::uint64_t seed = 1; curves < 120 && seed < 10000; ++seed) {
    const auto c = random_stable_graph(mix(11, seed), 2 + seed % 4, 12);
    if (!hyperelliptic_type_verdict(c.graph())) continue;
    ++curves;
    bool all = true;
    for (const auto& m : connected_minors(c.graph(), 2)) {
      ++minors;
      all = all && hyperelliptic_type_verdict(m);
    }
    closed += all;
    bool same = true;
    for (std::uint64_t k = 1; k <= 3; ++k) {
      ++relabelled;
      same = same && is_hyperelliptic_type(with_random_lengths(c.graph(), mix(seed, k))).verdict;
    }
    stable_verdict += same;
  }
  return {curves >= 100 && closed == curves && stable_verdict == curves,
          std::to_string(curves) + " curves, " + std::to_string(minors) + " minors (closure " + std::to_string(closed) +
              "/" + std::to_string(curves) + "), " + std::to_string(relabelled) + " re-randomized (unchanged " +
              std::to_string(stable_verdict) + "/" + std::to_string(curves) + ")"};
}

Outcome gram_criterion() {
  int curves = 0, good = 0;
  for (std::uint64_t seed = 1; curves < 250; ++seed) {
    TropicalCurve c = seed % 2 ? random_two_connected_curve(mix(13, seed), 12)
                               : random_stable_graph(mix(13, seed), 2 + seed % 4, 12);
    if (c.graph().total_weight() != 0) continue;
    c = with_random_lengths(c.graph(), mix(19, seed));
    ++curves;
    good += determinant(jacobian_gram(c).entries) == gram_determinant_oracle(c);
  }
  return {good == curves, std::to_string(good) + "/" + std::to_string(curves) + " exact matches"};
}

Outcome specialization_criterion() {
  int curves = 0, good = 0;
  for (const auto& block : hyperelliptic_type_blocks(60, 12)) {
    const auto c = with_random_lengths(block.graph(), curves + 1);
    const auto cert = is_hyperelliptic_type(c);
    ++curves;
    if (!cert.positive || !certificate_violation(c, cert).empty()) continue;
    good += is_specialization(c.graph(), cert.positive->model.graph()).has_value();
  }
  return {curves >= 50 && good == curves, std::to_string(good) + "/" + std::to_string(curves) + " models specialize"};
}

Outcome not_strongly_criterion() {
  std::string names;
  int found = 0;
  for (const auto& r : sweep_records) {
    if (r.two_connected && r.minor_verdict && r.strongly && !*r.strongly) {
      if (found++ < 3) names += " " + r.name;
    }
  }
  // Confirm the first example independently by listing every involution.
  bool confirmed = false;
  for (const auto& r : sweep_records) {
    if (!(r.two_connected && r.minor_verdict && r.strongly && !*r.strongly)) continue;
    for (const auto& item : census_items(2, 3, 8)) {
      if (item.name != r.name) continue;
      const auto stable = stable_model(item.curve).first;
      confirmed = true;
      for (const auto& t : enumerate_involutions(TropicalCurve::with_unit_lengths(stable.graph()))) {
        confirmed = confirmed && !is_hyperelliptic_involution(TropicalCurve::with_unit_lengths(stable.graph()), t);
      }
    }
    break;
  }
  return {found > 0 && confirmed, std::to_string(found) + " examples:" + names + (confirmed ? " (first confirmed)" : "")};
}

}  // namespace

int main() {
  report(1, "fixtures", fixtures_criterion);
  report(2, "theorem sweep", sweep_criterion);
  report(3, "series-parallel vs K4", series_parallel_criterion);
  report(4, "Torelli fixture", torelli_criterion);
  report(5, "hyperelliptic C1-structure", c1_structure_criterion);
  report(6, "edge removal", edge_removal_criterion);
  report(7, "minor closure and length independence", closure_criterion);
  report(8, "Gram oracle", gram_criterion);
  report(9, "specialization", specialization_criterion);
  report(10, "hyperelliptic type but not strongly", not_strongly_criterion);
  return failures == 0 ? 0 : 1;
}
