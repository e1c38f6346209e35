#include "hyptype/connectivity.hpp"

#include <algorithm>

#include "hyptype/errors.hpp"

namespace hyptype {

std::vector<EdgeIndex> separating_edges(const WeightedGraph& g) {
  std::vector<EdgeIndex> out;
  for (const Block& b : blocks(g)) {
    if (b.kind == Block::Kind::kTwoConnected && b.edges.size() == 1 && !g.is_loop(b.edges[0])) {
      out.push_back(b.edges[0]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

C1Partition c1_sets(const WeightedGraph& g) {
  const int m = g.edge_count();
  C1Partition p;
  p.set_of.assign(m, -2);
  for (EdgeIndex e : separating_edges(g)) p.set_of[e] = -1;
  for (EdgeIndex e = 0; e < m; ++e) {
    if (p.set_of[e] != -2) continue;
    p.set_of[e] = static_cast<int>(p.sets.size());
    std::vector<EdgeIndex> set{e};
    if (!g.is_loop(e)) {
      for (EdgeIndex f = e + 1; f < m; ++f) {
        if (p.set_of[f] != -2 || g.is_loop(f)) continue;
        const EdgeIndex pair[] = {e, f};
        if (!is_connected_without(g, pair)) {
          p.set_of[f] = p.set_of[e];
          set.push_back(f);
        }
      }
    }
    p.sets.push_back(std::move(set));
  }
  return p;
}

std::pair<TropicalCurve, EdgeTrace> apply_move_c_prime(const TropicalCurve& c, std::span<const EdgeIndex> s_prime,
                                                       EdgeIndex e0) {
  const C1Partition p = c1_sets(c.graph());
  if (s_prime.empty() || std::find(s_prime.begin(), s_prime.end(), e0) == s_prime.end()) {
    throw InputError("move (C') needs the kept edge inside the chosen set");
  }
  const int set = p.set_of.at(e0);
  Rational total = 0;
  for (EdgeIndex e : s_prime) {
    if (e < 0 || e >= c.graph().edge_count() || p.set_of[e] != set || set < 0) {
      throw InputError("move (C') set is not contained in a single C1-set");
    }
    total += c.length(e);
  }
  CurveEditor editor(c);
  for (EdgeIndex e : s_prime) {
    if (e != e0) editor.contract(e);
  }
  editor.set_length(e0, total);
  return editor.finish();
}

namespace {

Connectivization connectivize(const TropicalCurve& c, bool collapse_sets) {
  const WeightedGraph& g = c.graph();
  C1Partition p = c1_sets(g);
  CurveEditor editor(c);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (p.set_of[e] < 0) editor.contract(e);
  }
  if (collapse_sets) {
    for (const auto& set : p.sets) {
      Rational total = 0;
      for (EdgeIndex e : set) total += c.length(e);
      for (std::size_t i = 1; i < set.size(); ++i) editor.contract(set[i]);
      editor.set_length(set.front(), total);
    }
  }
  auto [result, trace] = editor.finish();
  std::vector<EdgeIndex> psi(g.edge_count(), -1);
  std::vector<EdgeIndex> set_edge;
  for (std::size_t s = 0; s < p.sets.size(); ++s) {
    set_edge.push_back(collapse_sets ? trace.edge_images[p.sets[s].front()].index : -1);
    for (EdgeIndex e : p.sets[s]) {
      psi[e] = collapse_sets ? set_edge.back() : trace.edge_images[e].index;
    }
  }
  return {std::move(result), std::move(trace), std::move(psi), std::move(p), std::move(set_edge)};
}

}  // namespace

Connectivization two_edge_connectivization(const TropicalCurve& c) { return connectivize(c, false); }

Connectivization three_edge_connectivization(const TropicalCurve& c) { return connectivize(c, true); }

std::vector<int> induced_c1_bijection(const TwoIsomorphism& w, const Connectivization& g3,
                                      const Connectivization& gp3) {
  const int sets = static_cast<int>(g3.set_edge.size());
  if (static_cast<int>(gp3.set_edge.size()) != sets || static_cast<int>(w.edge_map.size()) != sets) {
    throw InputError("witness does not match the connectivizations");
  }
  std::vector<int> set_of_result_edge(sets, -1);
  for (int s = 0; s < sets; ++s) set_of_result_edge[g3.set_edge[s]] = s;
  std::vector<EdgeIndex> inverse(sets, -1);
  for (EdgeIndex e = 0; e < sets; ++e) {
    const EdgeIndex f = w.edge_map[e];
    if (f < 0 || f >= sets || inverse[f] >= 0) throw InputError("witness is not a bijection");
    inverse[f] = e;
  }
  std::vector<int> beta(sets, -1);
  for (int s = 0; s < sets; ++s) beta[s] = set_of_result_edge[inverse[gp3.set_edge[s]]];
  return beta;
}

std::optional<TwoIsomorphism> c1_equivalent(const TropicalCurve& a, const TropicalCurve& b) {
  if (genus(a) != genus(b)) return std::nullopt;
  const auto a3 = three_edge_connectivization(a);
  const auto b3 = three_edge_connectivization(b);
  return find_two_isomorphism(a3.result, b3.result, true);
}

std::vector<Rational> transport_lengths(const TropicalCurve& source, const Connectivization& source3,
                                        const WeightedGraph& target, const Connectivization& target3,
                                        const std::vector<int>& beta, const Rational& separating_length) {
  std::vector<Rational> lengths(target.edge_count(), separating_length);
  for (std::size_t s = 0; s < target3.partition.sets.size(); ++s) {
    Rational total = 0;
    for (EdgeIndex f : source3.partition.sets[beta[s]]) total += source.length(f);
    const auto& members = target3.partition.sets[s];
    for (EdgeIndex e : members) lengths[e] = total / static_cast<int>(members.size());
  }
  return lengths;
}

}  // namespace hyptype
