#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "monodyn/dimension.hpp"
#include "monodyn/graph.hpp"
#include "monodyn/lpa.hpp"
#include "monodyn/monoid.hpp"
#include "monodyn/sandpile.hpp"
#include "monodyn/shifteq.hpp"

namespace monodyn {

/// Reports keep insertion order so identical inputs give identical bytes.
using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits are JSON numbers, larger ones decimal strings.
Json integer_json(const Integer& x);
Integer json_integer(const Json& j);

Json matrix_json(const IntMatrix& m);
IntMatrix json_matrix(const Json& j);
Json vector_json(const IntVector& v);
Json polynomial_json(const std::vector<Integer>& coeffs);

Json vertex_names_json(const Graph& g, const std::vector<VertexId>& vs);
Json structure_json(const Graph& g);
/// {"vertex": count, ...} over all vertices in declaration order.
Json config_json(const Graph& g, const ChipConfig& c);
Json odometer_json(const Graph& g, const Odometer& o);

Json presentation_json(const MonoidPresentation& p);
/// Elements formatted against `p` (whose generators the table elements index).
Json table_json(const MonoidPresentation& p, const MonoidTable& t);
Json rewrite_path_json(const MonoidPresentation& p, const std::vector<RewriteStep>& path);

Json dim_element_json(const DimElement& x);

Json es_witness_json(const ESWitness& w);
Json se_witness_json(const SEWitness& w);
Json chain_json(const SSEChain& c);
/// Reads {"matrices": [...], "links": [{"R": ..., "S": ...}, ...]}.
SSEChain json_chain(const Json& j);
Json bowen_franks_json(const BowenFranks& bf);
Json invariants_json(const InvariantReport& r);

Json simplicity_json(const Graph& g, const SimplicityVerdict& v);

}  // namespace monodyn
