#include "hyptype/io.hpp"

#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "hyptype/errors.hpp"

namespace hyptype {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const Json& field(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  if (!obj.contains(key)) fail(path + "." + key, "missing");
  return obj[key];
}

std::string text(const Json& value, const std::string& path) {
  if (!value.is_string()) fail(path, "expected a string");
  return value.get<std::string>();
}

const Json& array(const Json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array");
  return value;
}

std::string at(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

VertexIndex vertex_ref(const WeightedGraph& g, const Json& value, const std::string& path) {
  const std::string id = text(value, path);
  const auto v = g.find_vertex(id);
  if (!v) fail(path, "unknown vertex '" + id + "'");
  return *v;
}

EdgeIndex edge_ref(const WeightedGraph& g, const Json& value, const std::string& path) {
  const std::string id = text(value, path);
  const auto e = g.find_edge(id);
  if (!e) fail(path, "unknown edge '" + id + "'");
  return *e;
}

Json id_list(const WeightedGraph& g, const std::vector<VertexIndex>& vertices) {
  Json out = Json::array();
  for (VertexIndex v : vertices) out.push_back(g.vertex(v).id);
  return out;
}

Json edge_list(const WeightedGraph& g, const std::vector<EdgeIndex>& edges) {
  Json out = Json::array();
  for (EdgeIndex e : edges) out.push_back(g.edge(e).id);
  return out;
}

}  // namespace

ParsedCurve parse_curve(const Json& doc) {
  if (!doc.is_object()) fail("$", "expected a graph object");
  const Json& vs = array(field(doc, "$", "vertices"), "$.vertices");
  const Json& es = array(field(doc, "$", "edges"), "$.edges");
  std::vector<Vertex> vertices;
  std::unordered_map<std::string, VertexIndex> index;
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const std::string path = at("$.vertices", k);
    Vertex v;
    v.id = text(field(vs[k], path, "id"), path + ".id");
    if (v.id.empty()) fail(path + ".id", "empty id");
    if (vs[k].contains("weight")) {
      const Json& w = vs[k]["weight"];
      if (!w.is_number_integer() || w.get<long long>() < 0) fail(path + ".weight", "expected a nonnegative integer");
      v.weight = w.get<int>();
    }
    if (!index.emplace(v.id, static_cast<VertexIndex>(vertices.size())).second) fail(path + ".id", "duplicate id '" + v.id + "'");
    vertices.push_back(std::move(v));
  }
  std::vector<std::string> warnings;
  std::vector<Edge> edges;
  std::vector<Rational> lengths;
  std::unordered_map<std::string, EdgeIndex> edge_ids;
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string path = at("$.edges", k);
    Edge e;
    e.id = text(field(es[k], path, "id"), path + ".id");
    if (e.id.empty()) fail(path + ".id", "empty id");
    if (!edge_ids.emplace(e.id, static_cast<EdgeIndex>(edges.size())).second) fail(path + ".id", "duplicate id '" + e.id + "'");
    const Json& ends = array(field(es[k], path, "ends"), path + ".ends");
    if (ends.size() != 2) fail(path + ".ends", "expected two vertex ids");
    for (int s = 0; s < 2; ++s) {
      const std::string end_path = at(path + ".ends", s);
      const std::string id = text(ends[s], end_path);
      const auto it = index.find(id);
      if (it == index.end()) fail(end_path, "unknown vertex '" + id + "'");
      e.ends[s] = it->second;
    }
    Rational length = 1;
    if (!es[k].contains("length")) {
      warnings.push_back(path + ": no length, using 1");
    } else {
      const Json& l = es[k]["length"];
      if (l.is_number_integer()) {
        length = Rational(l.get<long long>());
      } else if (l.is_string()) {
        try {
          length = parse_rational(l.get<std::string>());
        } catch (const InputError& err) {
          fail(path + ".length", err.what());
        }
      } else {
        fail(path + ".length", "expected a rational string such as \"3/2\"");
      }
      if (length <= 0) fail(path + ".length", "length must be positive");
    }
    edges.push_back(std::move(e));
    lengths.push_back(length);
  }
  try {
    return {TropicalCurve(WeightedGraph(std::move(vertices), std::move(edges)), std::move(lengths)), std::move(warnings)};
  } catch (const InputError& err) {
    fail("$", err.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw InputError(path + ": " + err.what());
  }
}

ParsedCurve read_curve_file(const std::string& path) {
  try {
    return parse_curve(read_json_file(path));
  } catch (const InputError& err) {
    const std::string what = err.what();
    if (what.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + what);
  }
}

Json to_json(const TropicalCurve& c) {
  const WeightedGraph& g = c.graph();
  Json vertices = Json::array(), edges = Json::array();
  for (const auto& v : g.vertices()) vertices.push_back({{"id", v.id}, {"weight", v.weight}});
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    edges.push_back({{"id", edge.id},
                     {"ends", {g.vertex(edge.ends[0]).id, g.vertex(edge.ends[1]).id}},
                     {"length", format_rational(c.length(e))}});
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

Json involution_to_json(const WeightedGraph& g, const Involution& t) {
  Json vertices = Json::object(), edges = Json::array();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) vertices[g.vertex(v).id] = g.vertex(t.vertex_map[v]).id;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const HalfEdge h = t.half_edge_map[2 * e];
    edges.push_back({{"edge", g.edge(e).id}, {"image", g.edge(h / 2).id}, {"reversed", h % 2 == 1}});
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

Involution involution_from_json(const WeightedGraph& g, const Json& doc) {
  Involution t;
  t.vertex_map.assign(g.vertex_count(), -1);
  t.half_edge_map.assign(2 * g.edge_count(), -1);
  const Json& vs = field(doc, "$", "vertices");
  if (!vs.is_object()) fail("$.vertices", "expected an object of id -> id");
  for (const auto& [key, value] : vs.items()) {
    const auto v = g.find_vertex(key);
    if (!v) fail("$.vertices", "unknown vertex '" + key + "'");
    t.vertex_map[*v] = vertex_ref(g, value, "$.vertices." + key);
  }
  const Json& es = array(field(doc, "$", "edges"), "$.edges");
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string path = at("$.edges", k);
    const EdgeIndex e = edge_ref(g, field(es[k], path, "edge"), path + ".edge");
    const EdgeIndex image = edge_ref(g, field(es[k], path, "image"), path + ".image");
    bool reversed = false;
    if (es[k].contains("reversed")) {
      if (!es[k]["reversed"].is_boolean()) fail(path + ".reversed", "expected a boolean");
      reversed = es[k]["reversed"].get<bool>();
    }
    t.half_edge_map[2 * e] = 2 * image + (reversed ? 1 : 0);
    t.half_edge_map[2 * e + 1] = 2 * image + (reversed ? 0 : 1);
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (t.vertex_map[v] < 0) fail("$.vertices", "no image for vertex '" + g.vertex(v).id + "'");
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (t.half_edge_map[2 * e] < 0) fail("$.edges", "no image for edge '" + g.edge(e).id + "'");
  }
  return t;
}

Json minor_to_json(const WeightedGraph& host, const Pattern& pattern, const MinorModel& model) {
  Json pattern_edges = Json::array(), sets = Json::array();
  for (const auto& e : pattern.edges) pattern_edges.push_back({e[0], e[1]});
  for (const auto& set : model.branch_sets) sets.push_back(id_list(host, set));
  return {{"pattern", pattern.name},
          {"pattern_vertices", pattern.vertex_count},
          {"pattern_edges", pattern_edges},
          {"branch_sets", sets},
          {"edge_map", edge_list(host, model.edge_map)}};
}

MinorModel minor_from_json(const WeightedGraph& host, const Json& doc) {
  MinorModel model;
  const Json& sets = array(field(doc, "$", "branch_sets"), "$.branch_sets");
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const Json& set = array(sets[k], at("$.branch_sets", k));
    std::vector<VertexIndex> vertices;
    for (std::size_t j = 0; j < set.size(); ++j) vertices.push_back(vertex_ref(host, set[j], at(at("$.branch_sets", k), j)));
    model.branch_sets.push_back(std::move(vertices));
  }
  const Json& edges = array(field(doc, "$", "edge_map"), "$.edge_map");
  for (std::size_t k = 0; k < edges.size(); ++k) model.edge_map.push_back(edge_ref(host, edges[k], at("$.edge_map", k)));
  return model;
}

Pattern pattern_from_name(const std::string& name) {
  if (name == "k4" || name == "K4") return k4_pattern();
  if (name == "l3" || name == "L3") return l3_pattern();
  const ParsedCurve parsed = read_curve_file(name);
  return pattern_from_graph(parsed.curve.graph(), std::filesystem::path(name).stem().string());
}

Json trace_to_json(const WeightedGraph& source, const WeightedGraph& target, const EdgeTrace& trace) {
  Json vertices = Json::object(), edges = Json::object();
  for (VertexIndex v = 0; v < source.vertex_count(); ++v) {
    vertices[source.vertex(v).id] = target.vertex(trace.vertex_images[v]).id;
  }
  for (EdgeIndex e = 0; e < source.edge_count(); ++e) {
    const EdgeImage& image = trace.edge_images[e];
    Json entry;
    switch (image.kind) {
      case EdgeImage::Kind::kEdge: entry = {{"edge", target.edge(image.index).id}}; break;
      case EdgeImage::Kind::kVertex: entry = {{"vertex", target.vertex(image.index).id}}; break;
      case EdgeImage::Kind::kDeleted: entry = {{"deleted", true}}; break;
    }
    edges[source.edge(e).id] = entry;
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

Json c1_sets_to_json(const WeightedGraph& g, const C1Partition& p) {
  Json sets = Json::array();
  for (const auto& set : p.sets) sets.push_back(edge_list(g, set));
  std::vector<EdgeIndex> separating;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (p.set_of[e] < 0) separating.push_back(e);
  }
  return {{"sets", sets}, {"separating", edge_list(g, separating)}};
}

Json blocks_to_json(const WeightedGraph& g) {
  Json out = Json::array();
  for (const Block& b : blocks(g)) {
    out.push_back({{"kind", b.kind == Block::Kind::kWeightOneVertex ? "weight" : "graph"},
                   {"vertices", id_list(g, b.vertices)},
                   {"edges", edge_list(g, b.edges)},
                   {"genus", b.genus()}});
  }
  return out;
}

Json ears_to_json(const WeightedGraph& g, const EarDecomposition& d) {
  const bool nested = verify_ears(g, d, EarStage::kEar);
  const Nesting n = nested ? analyze_nesting(g, d) : Nesting{};
  Json ears = Json::array();
  for (std::size_t i = 0; i < d.ears.size(); ++i) {
    Json ear = {{"vertices", id_list(g, d.ears[i].vertices)}, {"edges", edge_list(g, d.ears[i].edges)}};
    if (nested) {
      ear["initial"] = n.parent[i] < 0;
      ear["parent"] = n.parent[i] < 0 ? Json(nullptr) : Json(n.parent[i]);
    }
    ears.push_back(std::move(ear));
  }
  return {{"stage", stage_name(d.stage)}, {"ears", ears}};
}

EarDecomposition ears_from_json(const WeightedGraph& g, const Json& doc) {
  EarDecomposition d;
  if (doc.is_object() && doc.contains("stage")) d.stage = parse_stage(text(doc["stage"], "$.stage"));
  const Json& ears = array(field(doc, "$", "ears"), "$.ears");
  for (std::size_t k = 0; k < ears.size(); ++k) {
    const std::string path = at("$.ears", k);
    Ear ear;
    const Json& vs = array(field(ears[k], path, "vertices"), path + ".vertices");
    for (std::size_t j = 0; j < vs.size(); ++j) ear.vertices.push_back(vertex_ref(g, vs[j], at(path + ".vertices", j)));
    const Json& es = array(field(ears[k], path, "edges"), path + ".edges");
    for (std::size_t j = 0; j < es.size(); ++j) ear.edges.push_back(edge_ref(g, es[j], at(path + ".edges", j)));
    d.ears.push_back(std::move(ear));
  }
  return d;
}

Json witness_to_json(const TorelliWitness& w) {
  Json map = Json::object();
  for (EdgeIndex e = 0; e < w.source3.graph().edge_count(); ++e) {
    map[w.source3.graph().edge(e).id] = w.target3.graph().edge(w.map.edge_map[e]).id;
  }
  return {{"source3", to_json(w.source3)},
          {"target3", to_json(w.target3)},
          {"edge_map", map},
          {"length_preserving", w.map.length_preserving}};
}

TorelliWitness witness_from_json(const Json& doc) {
  TropicalCurve source = parse_curve(field(doc, "$", "source3")).curve;
  TropicalCurve target = parse_curve(field(doc, "$", "target3")).curve;
  TwoIsomorphism map;
  map.edge_map.assign(source.graph().edge_count(), -1);
  const Json& m = field(doc, "$", "edge_map");
  if (!m.is_object()) fail("$.edge_map", "expected an object of id -> id");
  for (const auto& [key, value] : m.items()) {
    const auto e = source.graph().find_edge(key);
    if (!e) fail("$.edge_map", "unknown edge '" + key + "'");
    map.edge_map[*e] = edge_ref(target.graph(), value, "$.edge_map." + key);
  }
  for (EdgeIndex e : map.edge_map) {
    if (e < 0) fail("$.edge_map", "map is not total");
  }
  const Json& lp = field(doc, "$", "length_preserving");
  if (!lp.is_boolean()) fail("$.length_preserving", "expected a boolean");
  map.length_preserving = lp.get<bool>();
  return {std::move(source), std::move(target), std::move(map)};
}

Json certificate_to_json(const TropicalCurve& c, const HyptypeCertificate& cert) {
  Json out = {{"verdict", cert.verdict}, {"genus", genus(c)}};
  if (cert.negative) out["negative"] = minor_to_json(c.graph(), cert.negative->pattern, cert.negative->model);
  if (cert.positive) {
    const PositiveCertificate& p = *cert.positive;
    out["positive"] = {{"model", to_json(p.model)},
                       {"involution", involution_to_json(p.model.graph(), p.involution)},
                       {"witness", witness_to_json(p.witness)}};
  }
  return out;
}

HyptypeCertificate certificate_from_json(const TropicalCurve& c, const Json& doc) {
  HyptypeCertificate cert;
  const Json& verdict = field(doc, "$", "verdict");
  if (!verdict.is_boolean()) fail("$.verdict", "expected a boolean");
  cert.verdict = verdict.get<bool>();
  if (doc.contains("negative")) {
    const Json& neg = doc["negative"];
    const std::string name = text(field(neg, "$.negative", "pattern"), "$.negative.pattern");
    Pattern pattern{name, 0, {}};
    if (name == "K4") pattern = k4_pattern();
    else if (name == "L3") pattern = l3_pattern();
    else {
      pattern.vertex_count = field(neg, "$.negative", "pattern_vertices").get<int>();
      for (const auto& e : array(field(neg, "$.negative", "pattern_edges"), "$.negative.pattern_edges")) {
        pattern.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      }
    }
    cert.negative = NegativeCertificate{std::move(pattern), minor_from_json(c.graph(), neg)};
  }
  if (doc.contains("positive")) {
    const Json& pos = doc["positive"];
    TropicalCurve model = parse_curve(field(pos, "$.positive", "model")).curve;
    Involution t = involution_from_json(model.graph(), field(pos, "$.positive", "involution"));
    TorelliWitness w = witness_from_json(field(pos, "$.positive", "witness"));
    cert.positive = PositiveCertificate{std::move(model), std::move(t), std::move(w)};
  }
  return cert;
}

}  // namespace hyptype
