#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "monodyn/int_matrix.hpp"

namespace monodyn {

using VertexId = std::size_t;

/// Out-going parallel class: `multiplicity` edges towards `target`.
struct Arc {
  VertexId target;
  std::uint64_t multiplicity;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite directed multigraph with named vertices in declaration order and an
/// optional vertex weight map.
class Graph {
 public:
  VertexId add_vertex(std::string name);
  /// Adds `multiplicity` parallel edges; repeated calls for the same pair accumulate.
  void add_edge(VertexId source, VertexId target, std::uint64_t multiplicity = 1);
  void set_weight(VertexId v, std::uint64_t weight);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<VertexId> find(std::string_view name) const;
  VertexId id(std::string_view name) const;  // throws DomainError

  /// Arcs out of `v`, sorted by target.
  std::span<const Arc> out(VertexId v) const { return out_.at(v); }
  std::uint64_t outdegree(VertexId v) const;
  std::uint64_t multiplicity(VertexId source, VertexId target) const;
  std::uint64_t loops(VertexId v) const { return multiplicity(v, v); }
  bool is_sink(VertexId v) const { return out_.at(v).empty(); }
  std::uint64_t edge_count() const;
  std::vector<VertexId> sinks() const;

  bool has_weights() const noexcept { return has_weights_; }
  /// Explicit weight when present, otherwise the vertex weighting w(v) = outdegree(v).
  std::uint64_t weight(VertexId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.names_ == b.names_ && a.out_ == b.out_ && a.has_weights_ == b.has_weights_ &&
           a.weights_ == b.weights_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::optional<std::uint64_t>> weights_;
  bool has_weights_ = false;
};

/// Line-oriented graph text: "v <name>", "e <src> <dst> [mult]", "w <name> <int>".
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

/// Entry (i, j) counts edges i -> j in declaration order.
IntMatrix adjacency_matrix(const Graph& g);
/// Inverse of adjacency_matrix with vertices named v1..vn.
Graph graph_from_matrix(const IntMatrix& a);

struct StructureReport {
  std::vector<VertexId> sinks;
  bool strongly_connected = false;
  std::vector<std::vector<VertexId>> scc_partition;
  bool sandpile = false;
  std::optional<VertexId> unique_sink;
  std::vector<std::uint64_t> outdegrees;
  std::vector<std::uint64_t> indegrees;
};

/// Strongly connected components, each sorted, ordered by least member.
std::vector<std::vector<VertexId>> strongly_connected_components(const Graph& g);
/// Vertices reachable from `start` by paths of length >= 0.
std::vector<bool> reachable_from(const Graph& g, VertexId start);
/// Vertices from which `target` is reachable by paths of length >= 0.
std::vector<bool> reaching(const Graph& g, VertexId target);

StructureReport structure_report(const Graph& g);
bool is_sandpile_graph(const Graph& g);

struct CycleExitResult {
  bool every_cycle_has_exit = true;
  /// Vertices of an exit-less cycle in traversal order, when one exists.
  std::vector<VertexId> witness;
};

CycleExitResult every_cycle_has_exit(const Graph& g);

/// Some simple cycle through vertices of `component` (which must be cyclic).
std::vector<VertexId> cycle_in_component(const Graph& g, std::span<const VertexId> component);
/// True when the component carries a cycle (more than one vertex or a loop).
bool is_cyclic_component(const Graph& g, std::span<const VertexId> component);

}  // namespace monodyn
