#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

#include "hyptype/connectivity.hpp"
#include "hyptype/decision.hpp"
#include "hyptype/ears.hpp"
#include "hyptype/errors.hpp"
#include "hyptype/hyperelliptic.hpp"
#include "hyptype/io.hpp"
#include "hyptype/minors.hpp"
#include "hyptype/sweep.hpp"

using namespace hyptype;

namespace {

struct Globals {
  std::optional<std::uint64_t> seed;
  bool verbose = false;

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("HYPTYPE_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw InputError("HYPTYPE_SEED must be a nonnegative integer");
      }
    }
    return 1;
  }
};

Globals globals;

void note(const std::string& line) {
  if (globals.verbose) std::cerr << line << "\n";
}

TropicalCurve load(const std::string& path) {
  ParsedCurve parsed = read_curve_file(path);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << path << ": " << w << "\n";
  return std::move(parsed.curve);
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

Json id_map(const WeightedGraph& from, const WeightedGraph& to, const std::vector<int>& map) {
  Json out = Json::object();
  for (VertexIndex v = 0; v < from.vertex_count(); ++v) out[from.vertex(v).id] = to.vertex(map[v]).id;
  return out;
}

int cmd_analyze(const std::string& path) {
  const TropicalCurve c = load(path);
  const WeightedGraph& g = c.graph();
  const bool stable = is_stable(g);
  emit({{"genus", genus(g)},
        {"vertices", g.vertex_count()},
        {"edges", g.edge_count()},
        {"total_weight", g.total_weight()},
        {"total_length", format_rational(c.total_length())},
        {"stable", stable},
        {"d", stable ? Json(d_invariant(g)) : Json(nullptr)},
        {"two_connected", is_two_connected(g)},
        {"blocks", blocks_to_json(g)},
        {"c1", c1_sets_to_json(g, c1_sets(g))}});
  note("genus " + std::to_string(genus(g)) + (stable ? ", stable" : ", not stable"));
  return 0;
}

int cmd_connectivize(const std::string& path, int level) {
  const TropicalCurve c = load(path);
  const Connectivization conn = level == 2 ? two_edge_connectivization(c) : three_edge_connectivization(c);
  Json psi = Json::object();
  for (EdgeIndex e = 0; e < c.graph().edge_count(); ++e) {
    psi[c.graph().edge(e).id] = conn.psi[e] < 0 ? Json(nullptr) : Json(conn.result.graph().edge(conn.psi[e]).id);
  }
  emit({{"level", level},
        {"result", to_json(conn.result)},
        {"psi", psi},
        {"trace", trace_to_json(c.graph(), conn.result.graph(), conn.trace)},
        {"c1", c1_sets_to_json(c.graph(), conn.partition)}});
  note(std::to_string(c.graph().edge_count()) + " edges -> " + std::to_string(conn.result.graph().edge_count()));
  return 0;
}

int cmd_minor(const std::string& path, const std::string& pattern_name) {
  const TropicalCurve c = load(path);
  const Pattern pattern = pattern_from_name(pattern_name);
  const auto model = find_minor_model(c.graph(), pattern);
  emit({{"pattern", pattern.name},
        {"found", model.has_value()},
        {"model", model ? minor_to_json(c.graph(), pattern, *model) : Json(nullptr)}});
  note(pattern.name + (model ? " minor found" : " minor absent"));
  return 0;
}

int cmd_hyptype(const std::string& path, bool check) {
  const TropicalCurve c = load(path);
  const HyptypeCertificate cert = is_hyperelliptic_type(c);
  if (const auto why = certificate_violation(c, cert); !why.empty()) {
    throw PipelineError("certificate failed re-verification: " + why);
  }
  emit(certificate_to_json(c, cert));
  note(cert.verdict ? "hyperelliptic type" : "not hyperelliptic type (" + cert.negative->pattern.name + " minor)");
  return check && !cert.verdict ? 1 : 0;
}

int cmd_jacobian(const std::string& path, bool gram, const std::string& compare) {
  const TropicalCurve c = load(path);
  const GramMatrix q = jacobian_gram(c);
  Json out = {{"genus", genus(c)}, {"determinant", format_rational(determinant(q.entries))}};
  if (gram) {
    Json rows = Json::array();
    for (const auto& row : q.entries) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(format_rational(x));
      rows.push_back(r);
    }
    Json cycles = Json::array();
    for (const auto& cycle : q.cycles) {
      Json terms = Json::array();
      for (const auto& [e, s] : cycle) terms.push_back({{"edge", c.graph().edge(e).id}, {"sign", s}});
      cycles.push_back(terms);
    }
    Json tree = Json::array();
    for (EdgeIndex e : q.spanning_tree) tree.push_back(c.graph().edge(e).id);
    out["gram"] = rows;
    out["basis"] = {{"spanning_tree", tree}, {"cycles", cycles}, {"weight_directions", q.weight_directions}};
  }
  if (!compare.empty()) {
    const TropicalCurve other = load(compare);
    const auto w = jacobians_isomorphic(c, other);
    out["compare"] = {{"isomorphic", w.has_value()},
                      {"determinant", format_rational(determinant(jacobian_gram(other).entries))},
                      {"witness", w ? witness_to_json(*w) : Json(nullptr)}};
    note(w ? "Jacobians isomorphic" : "Jacobians not isomorphic");
  }
  emit(out);
  return 0;
}

int cmd_ears(const std::string& path, const std::string& stage_text) {
  const TropicalCurve c = load(path);
  const WeightedGraph& g = c.graph();
  const EarStage stage = parse_stage(stage_text);
  if (stage != EarStage::kNested && stage != EarStage::kHted && stage != EarStage::kHed) {
    throw InputError("--stage must be nested, hted or hed");
  }
  Json out = {{"stage", stage_text}};
  auto nested = nested_ear_decomposition(g);
  if (!nested) {
    out["exists"] = false;
    out["reason"] = "K4 minor";
    out["minor"] = minor_to_json(g, k4_pattern(), *find_minor_model(g, k4_pattern()));
    emit(out);
    return 0;
  }
  if (stage == EarStage::kNested) {
    out["exists"] = true;
    out["decomposition"] = ears_to_json(g, *nested);
    emit(out);
    return 0;
  }
  if (const auto l3 = find_minor_model(g, l3_pattern())) {
    out["exists"] = false;
    out["reason"] = "L3 minor";
    out["minor"] = minor_to_json(g, l3_pattern(), *l3);
    emit(out);
    return 0;
  }
  const EarDecomposition hted = htedify(g, *nested);
  out["exists"] = true;
  if (stage == EarStage::kHted) {
    out["decomposition"] = ears_to_json(g, hted);
    emit(out);
    return 0;
  }
  if (!is_stable(g) || genus(g) < 2) throw InputError("the hed stage needs a stable graph of genus >= 2");
  const HedResult hed = hedify(c, ensure_three_initial_ears(g, hted));
  const HedInvolution inv = involution_from_hed(hed.curve.graph(), hed.ears);
  const WeightedGraph& gp = hed.curve.graph();
  Json added = Json::array(), equal = Json::array();
  for (EdgeIndex e : hed.added_edges) added.push_back(gp.edge(e).id);
  for (const auto& [a, b] : inv.equal_lengths) equal.push_back({gp.edge(a).id, gp.edge(b).id});
  out["curve"] = to_json(hed.curve);
  out["decomposition"] = ears_to_json(gp, hed.ears);
  out["added_edges"] = added;
  out["trace"] = trace_to_json(gp, g, hed.trace);
  out["involution"] = involution_to_json(gp, inv.involution);
  out["equal_lengths"] = equal;
  emit(out);
  note(std::to_string(hed.added_edges.size()) + " subdivisions");
  return 0;
}

int cmd_hyperelliptic(const std::string& path, bool all) {
  const TropicalCurve c = load(path);
  if (genus(c) < 2) throw InputError("hyperelliptic needs genus >= 2");
  const auto [model, trace] = stable_model(c);
  const auto t = hyperelliptic_involution(model);
  Json out = {{"hyperelliptic", t.has_value()},
              {"model", to_json(model)},
              {"trace", trace_to_json(c.graph(), model.graph(), trace)},
              {"involution", t ? involution_to_json(model.graph(), *t) : Json(nullptr)}};
  if (all) {
    Json list = Json::array();
    for (const auto& s : enumerate_involutions(model)) {
      list.push_back({{"involution", involution_to_json(model.graph(), s)},
                      {"hyperelliptic", is_hyperelliptic_involution(model, s)}});
    }
    out["involutions"] = list;
  }
  emit(out);
  note(t ? "hyperelliptic" : "not hyperelliptic");
  return 0;
}

int cmd_quotient(const std::string& path, const std::string& involution_path) {
  const TropicalCurve c = load(path);
  const Involution t = involution_from_json(c.graph(), read_json_file(involution_path));
  const QuotientResult q = quotient(c, t);
  const WeightedGraph& qg = q.quotient.graph();
  Json edges = Json::object(), fixed = Json::array();
  for (EdgeIndex e = 0; e < c.graph().edge_count(); ++e) {
    const EdgeImage& im = q.edge_projection[e];
    edges[c.graph().edge(e).id] = im.kind == EdgeImage::Kind::kEdge ? Json{{"edge", qg.edge(im.index).id}}
                                                                     : Json{{"vertex", qg.vertex(im.index).id}};
  }
  for (const auto& p : q.fixed_points) {
    fixed.push_back(p.kind == FixedPoint::Kind::kVertex ? Json{{"vertex", c.graph().vertex(p.index).id}}
                                                        : Json{{"edge_midpoint", c.graph().edge(p.index).id}});
  }
  emit({{"quotient", to_json(q.quotient)},
        {"tree", genus(qg) - qg.total_weight() == 0},
        {"hyperelliptic", is_hyperelliptic_involution(c, t)},
        {"vertex_projection", id_map(c.graph(), qg, q.vertex_projection)},
        {"edge_projection", edges},
        {"fixed_points", fixed}});
  return 0;
}

int cmd_gen(int genus_target, int max_edges, bool two_connected) {
  const std::uint64_t seed = globals.resolved_seed();
  const TropicalCurve c =
      two_connected ? random_two_connected_curve(seed, max_edges) : random_stable_graph(seed, genus_target, max_edges);
  emit(to_json(c));
  note("seed " + std::to_string(seed));
  return 0;
}

int cmd_sweep(const std::vector<std::string>& files, int census_max, int random_count, int max_genus, int max_edges,
              int threads, bool records) {
  std::vector<SweepItem> items;
  if (!files.empty()) {
    for (const auto& f : files) items.push_back({f, load(f)});
  } else {
    items = census_items(2, census_max, 8);
    auto extra = random_items(globals.resolved_seed(), random_count, max_genus, max_edges);
    items.insert(items.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
  }
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto results = run_sweep(items, threads);
  Json out = {{"summary", sweep_summary(results)}};
  if (records) {
    Json list = Json::array();
    for (const auto& r : results) list.push_back(record_to_json(r));
    out["records"] = list;
  }
  emit(out);
  const Json& s = out["summary"];
  note(std::to_string(s["agree"].get<int>()) + "/" + std::to_string(s["total"].get<int>()) + " agree");
  return s["agree"] == s["total"] ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide whether tropical curves are of hyperelliptic type, with certificates."};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", globals.seed, "Seed for gen and sweep (default: $HYPTYPE_SEED, else 1)");
  app.add_flag("--verbose", globals.verbose, "Human-readable summary on stderr");

  std::string file, other;
  std::vector<std::string> files;
  int level = 3, genus_target = 3, max_edges = 12, census_max = 3, random_count = 500, max_genus = 5, threads = 0;
  bool check = false, gram = false, all = false, two_connected = false, records = false;
  std::string pattern = "k4", stage = "hed";
  int code = 0;

  auto* analyze = app.add_subcommand("analyze", "Genus, stability, blocks, d and C1-sets");
  analyze->add_option("file", file, "Graph document")->required();
  analyze->callback([&] { code = cmd_analyze(file); });

  auto* connectivize = app.add_subcommand("connectivize", "2- or 3-edge connectivization");
  connectivize->add_option("--level", level, "2 or 3")->check(CLI::IsMember({2, 3}));
  connectivize->add_option("file", file, "Graph document")->required();
  connectivize->callback([&] { code = cmd_connectivize(file, level); });

  auto* minor = app.add_subcommand("minor", "Search for a minor model");
  minor->add_option("--pattern", pattern, "k4, l3 or a graph document");
  minor->add_option("file", file, "Graph document")->required();
  minor->callback([&] { code = cmd_minor(file, pattern); });

  auto* hyptype_cmd = app.add_subcommand("hyptype", "Hyperelliptic type decision with certificate");
  hyptype_cmd->add_flag("--check", check, "Exit 1 when not of hyperelliptic type");
  hyptype_cmd->add_option("file", file, "Graph document")->required();
  hyptype_cmd->callback([&] { code = cmd_hyptype(file, check); });

  auto* jacobian = app.add_subcommand("jacobian", "Gram matrix and Jacobian comparison");
  jacobian->add_flag("--gram", gram, "Print the Gram matrix and its basis");
  jacobian->add_option("--compare", other, "Second graph document");
  jacobian->add_option("file", file, "Graph document")->required();
  jacobian->callback([&] { code = cmd_jacobian(file, gram, other); });

  auto* ears = app.add_subcommand("ears", "Nested ear decompositions and the HED construction");
  ears->add_option("--stage", stage, "nested, hted or hed")->check(CLI::IsMember({"nested", "hted", "hed"}));
  ears->add_option("file", file, "Graph document")->required();
  ears->callback([&] { code = cmd_ears(file, stage); });

  auto* hyperelliptic = app.add_subcommand("hyperelliptic", "Hyperelliptic involution of the stable model");
  hyperelliptic->add_flag("--involutions", all, "List every involution");
  hyperelliptic->add_option("file", file, "Graph document")->required();
  hyperelliptic->callback([&] { code = cmd_hyperelliptic(file, all); });

  auto* quotient_cmd = app.add_subcommand("quotient", "Quotient by a given involution");
  quotient_cmd->add_option("--involution", other, "Involution document")->required();
  quotient_cmd->add_option("file", file, "Graph document")->required();
  quotient_cmd->callback([&] { code = cmd_quotient(file, other); });

  auto* gen = app.add_subcommand("gen", "Random curve");
  gen->add_option("--genus", genus_target, "Genus of a stable curve (>= 2)");
  gen->add_option("--max-edges", max_edges, "Edge bound");
  gen->add_flag("--two-connected", two_connected, "Loopless 2-connected graph instead (genus not fixed)");
  gen->callback([&] { code = cmd_gen(genus_target, max_edges, two_connected); });

  auto* sweep = app.add_subcommand("sweep", "Cross-check the minor verdict against the construction");
  sweep->add_option("files", files, "Graph documents (default: census plus random curves)");
  sweep->add_option("--census-genus", census_max, "Largest census genus (edges <= 8)");
  sweep->add_option("--random", random_count, "Number of random stable curves");
  sweep->add_option("--max-genus", max_genus, "Largest random genus");
  sweep->add_option("--max-edges", max_edges, "Edge bound for random curves");
  sweep->add_option("--threads", threads, "Workers (default: hardware threads)");
  sweep->add_flag("--records", records, "Include one record per curve");
  sweep->callback([&] { code = cmd_sweep(files, census_max, random_count, max_genus, max_edges, threads, records); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeGuardError& e) {
    std::cerr << "size guard: " << e.what() << "\n";
    return 3;
  } catch (const PipelineError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return code;
}
