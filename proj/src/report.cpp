#include "monodyn/report.hpp"

#include "monodyn/error.hpp"
#include "monodyn/smith.hpp"

namespace monodyn {

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Integer json_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) == 0) return x;
  }
  throw DomainError("expected an integer, got " + j.dump());
}

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& x : m.row(i)) row.push_back(integer_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix json_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw DomainError("matrix rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw DomainError("matrix rows have different lengths");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = json_integer(j[i][k]);
  }
  return m;
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json polynomial_json(const std::vector<Integer>& coeffs) {
  return Json{{"coefficients", vector_json(coeffs)}, {"text", format_polynomial(coeffs)}};
}

Json vertex_names_json(const Graph& g, const std::vector<VertexId>& vs) {
  Json out = Json::array();
  for (auto v : vs) out.push_back(g.name(v));
  return out;
}

Json structure_json(const Graph& g) {
  const StructureReport r = structure_report(g);
  Json j;
  j["vertices"] = g.names();
  j["edge_count"] = g.edge_count();
  j["sinks"] = vertex_names_json(g, r.sinks);
  j["strongly_connected"] = r.strongly_connected;
  Json parts = Json::array();
  for (const auto& c : r.scc_partition) parts.push_back(vertex_names_json(g, c));
  j["scc_partition"] = std::move(parts);
  j["sandpile"] = r.sandpile;
  j["unique_sink"] = r.unique_sink ? Json(g.name(*r.unique_sink)) : Json(nullptr);
  Json outdeg = Json::object(), indeg = Json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    outdeg[g.name(v)] = r.outdegrees[v];
    indeg[g.name(v)] = r.indegrees[v];
  }
  j["outdegrees"] = std::move(outdeg);
  j["indegrees"] = std::move(indeg);
  const auto exits = every_cycle_has_exit(g);
  j["every_cycle_has_exit"] = exits.every_cycle_has_exit;
  j["exitless_cycle"] = vertex_names_json(g, exits.witness);
  return j;
}

Json config_json(const Graph& g, const ChipConfig& c) {
  Json j = Json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) j[g.name(v)] = c.counts[v];
  return j;
}

Json odometer_json(const Graph& g, const Odometer& o) {
  Json j = Json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v) j[g.name(v)] = o.firings[v];
  return j;
}

Json presentation_json(const MonoidPresentation& p) {
  Json rels = Json::array();
  for (const auto& r : p.relations) rels.push_back(format_element(p, r.lhs) + " = " + format_element(p, r.rhs));
  return Json{{"generators", p.generators}, {"relations", std::move(rels)}};
}

Json table_json(const MonoidPresentation& p, const MonoidTable& t) {
  Json elems = Json::array();
  for (const auto& e : t.elements) elems.push_back(format_element(p, e));
  Json images = Json::object();
  for (std::size_t g = 0; g < t.generator_images.size(); ++g) images[p.generators[g]] = t.generator_images[g];
  return Json{{"size", t.size()},
              {"elements", std::move(elems)},
              {"identity", t.identity},
              {"generator_images", std::move(images)},
              {"addition", t.addition}};
}

Json rewrite_path_json(const MonoidPresentation& p, const std::vector<RewriteStep>& path) {
  Json out = Json::array();
  for (const auto& s : path)
    out.push_back(Json{{"relation", s.relation},
                       {"direction", s.forward ? "forward" : "backward"},
                       {"result", format_element(p, s.result)}});
  return out;
}

Json dim_element_json(const DimElement& x) {
  return Json{{"text", format_dim_element(x)}, {"vector", vector_json(x.vec)}, {"stage", x.stage}};
}

Json es_witness_json(const ESWitness& w) { return Json{{"R", matrix_json(w.r)}, {"S", matrix_json(w.s)}}; }

Json se_witness_json(const SEWitness& w) {
  return Json{{"R", matrix_json(w.r)}, {"S", matrix_json(w.s)}, {"lag", w.lag}};
}

Json chain_json(const SSEChain& c) {
  Json ms = Json::array(), ls = Json::array();
  for (const auto& m : c.matrices) ms.push_back(matrix_json(m));
  for (const auto& l : c.links) ls.push_back(es_witness_json(l));
  return Json{{"matrices", std::move(ms)}, {"links", std::move(ls)}};
}

SSEChain json_chain(const Json& j) {
  if (!j.is_object() || !j.contains("matrices") || !j["matrices"].is_array())
    throw DomainError("chain must be an object with a 'matrices' array");
  SSEChain c;
  for (const auto& m : j["matrices"]) c.matrices.push_back(json_matrix(m));
  if (j.contains("links")) {
    if (!j["links"].is_array()) throw DomainError("'links' must be an array");
    for (const auto& l : j["links"]) {
      if (!l.is_object() || !l.contains("R") || !l.contains("S"))
        throw DomainError("each link needs 'R' and 'S'");
      c.links.push_back({json_matrix(l["R"]), json_matrix(l["S"])});
    }
  }
  return c;
}

Json bowen_franks_json(const BowenFranks& bf) {
  return Json{{"invariant_factors", vector_json(bf.invariant_factors)},
              {"free_rank", bf.free_rank},
              {"text", format_bowen_franks(bf)}};
}

Json invariants_json(const InvariantReport& r) {
  return Json{{"bowen_franks", Json::array({bowen_franks_json(r.bowen_franks_a), bowen_franks_json(r.bowen_franks_b)})},
              {"charpoly_core",
               Json::array({polynomial_json(r.charpoly_core_a), polynomial_json(r.charpoly_core_b)})},
              {"verdict", r.obstruction ? "obstruction" : "no_obstruction"},
              {"mismatches", r.mismatches}};
}

Json simplicity_json(const Graph& g, const SimplicityVerdict& v) {
  Json j{{"simple", v.simple}, {"failing_condition", std::string(to_string(v.failing_condition))}};
  if (v.witness_vertex) j["witness_vertex"] = g.name(*v.witness_vertex);
  if (v.unreached_sink) j["unreached_sink"] = g.name(*v.unreached_sink);
  if (!v.cycle.empty()) j["cycle"] = vertex_names_json(g, v.cycle);
  return j;
}

}  // namespace monodyn
