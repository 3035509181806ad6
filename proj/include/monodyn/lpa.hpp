#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monodyn/graph.hpp"
#include "monodyn/monoid.hpp"
#include "monodyn/shifteq.hpp"

namespace monodyn {

enum class SimplicityFailure { none, cofinality, exitless_cycle };
std::string_view to_string(SimplicityFailure f);

struct SimplicityVerdict {
  bool simple = true;
  SimplicityFailure failing_condition = SimplicityFailure::none;
  /// Cofinality: the vertex that fails to connect.
  std::optional<VertexId> witness_vertex;
  /// Cofinality: the unreached sink, if the missed target is a sink.
  std::optional<VertexId> unreached_sink;
  /// Cofinality: vertices of the unreached cycle; exit-less cycle: the cycle.
  std::vector<VertexId> cycle;
};

/// Every vertex connects to every cycle and every sink, and every cycle has an exit.
SimplicityVerdict lpa_simple(const Graph& g);

/// Every cycle has an exit.
bool lpa_zorn(const Graph& g);

/// M_r(L(1, n)) isomorphic to M_s(L(1, m)); throws DomainError unless n, m >= 2 and r, s >= 1.
bool matrix_leavitt_iso(long n, long r, long m, long s);
/// G_{n,r} isomorphic to G_{m,s}; same condition and domain.
bool higman_thompson_iso(long n, long r, long m, long s);

enum class CompareMode { plain, graded };
/// Which monoid the plain comparison uses: the graph monoid (v = sum of edge
/// heads) or the sandpile monoid (outdegree weighting, sink set to zero).
enum class MonoidFlavor { graph, sandpile };

CompareMode parse_compare_mode(std::string_view s);
MonoidFlavor parse_monoid_flavor(std::string_view s);
std::string_view to_string(CompareMode m);
std::string_view to_string(MonoidFlavor f);

struct CompareBounds {
  EnumerateBounds enumerate;
  SESearchBounds se;
  /// Candidate generator assignments tried by the isomorphism search.
  std::size_t max_assignments = 1000000;
  std::uint64_t firing_budget = 1000000000;
};

enum class CompareKind { iso_witness_found, not_iso, unknown };
std::string_view to_string(CompareKind k);

struct CompareVerdict {
  CompareKind kind = CompareKind::unknown;
  /// Plain witness: image of each generator of the first monoid as an element
  /// index of `table_f`; identity witnesses map vertex i to vertex i.
  bool identity = false;
  std::vector<std::size_t> generator_images;
  std::optional<MonoidTable> table_e;
  std::optional<MonoidTable> table_f;
  /// Graded witness.
  std::optional<SEWitness> se_witness;
  /// NotIso: which invariant differs ("size", "order_unit_isomorphism", or
  /// the invariants_report mismatches), with the report when graded.
  std::string invariant;
  std::optional<InvariantReport> invariants;
  /// Unknown: what ran out.
  std::string reason;
};

CompareVerdict kp_compare(const Graph& e, const Graph& f, CompareMode mode, MonoidFlavor flavor,
                          const CompareBounds& bounds = {});

/// Checks that `images` (generator images of `a` inside `b`) define an
/// order-unit-preserving monoid isomorphism a -> b.
bool is_unit_preserving_iso(const MonoidTable& a, std::size_t unit_a, const MonoidTable& b, std::size_t unit_b,
                            const std::vector<std::size_t>& images);

/// Index of the sum of all generators in a table.
std::size_t table_order_unit(const MonoidTable& t);

}  // namespace monodyn
