#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monodyn/graph.hpp"

namespace monodyn {

/// Nonnegative-integer vector over the generators of a presentation.
struct MonoidElement {
  std::vector<std::uint64_t> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  bool is_zero() const;
  /// Componentwise x >= y.
  bool contains(const MonoidElement& y) const;

  friend auto operator<=>(const MonoidElement&, const MonoidElement&) = default;
  friend MonoidElement operator+(const MonoidElement& x, const MonoidElement& y);
};

struct MonoidRelation {
  MonoidElement lhs;
  MonoidElement rhs;
};

enum class PresentationOrigin { abstract, graph };

/// Commutative monoid presentation <generators | lhs = rhs, ...>.
struct MonoidPresentation {
  std::vector<std::string> generators;
  std::vector<MonoidRelation> relations;
  PresentationOrigin origin = PresentationOrigin::abstract;

  std::size_t rank() const noexcept { return generators.size(); }
  MonoidElement zero() const { return MonoidElement{std::vector<std::uint64_t>(rank(), 0)}; }
  MonoidElement unit(std::size_t g) const;
  /// Throws DomainError when a relation has the wrong length or is trivial.
  void validate() const;
};

/// Finite commutative monoid as a Cayley table over canonical representatives.
struct MonoidTable {
  std::vector<MonoidElement> elements;
  std::vector<std::vector<std::size_t>> addition;
  std::size_t identity = 0;
  /// Index of the class of each generator.
  std::vector<std::size_t> generator_images;

  std::size_t size() const noexcept { return elements.size(); }
};

/// Checks closure, identity, commutativity and associativity exhaustively.
bool satisfies_monoid_laws(const MonoidTable& t);

/// Relabels a generator-generated table by breadth-first discovery from the
/// identity, adding generator images in order. Two tables over the same
/// generators are isomorphic through the generator correspondence iff their
/// canonical forms have equal addition tables and generator images.
MonoidTable canonical_relabel(const MonoidTable& t);
bool same_canonical_table(const MonoidTable& a, const MonoidTable& b);

// ---------------------------------------------------------------------------

/// Graph monoid presentation: for each non-sink v, w(v)·v = sum of edge heads.
/// `weighted` uses the graph weights (vertex weighting by default), otherwise
/// w = 1. `sink_zero` deletes the unique sink generator (sandpile graphs only).
MonoidPresentation graph_monoid_presentation(const Graph& g, bool weighted, bool sink_zero);

/// Sum of all generators; only for presentations built from graphs.
MonoidElement order_unit(const MonoidPresentation& p);

enum class Verdict { yes, no, unknown };
std::string_view to_string(Verdict v);

/// One rewrite: relation `relation` applied left-to-right (`forward`) or
/// right-to-left, in additive context; `result` is the element produced.
struct RewriteStep {
  std::size_t relation;
  bool forward;
  MonoidElement result;
};

struct WordBounds {
  std::size_t depth = 6;
  std::size_t max_states = 200000;
};

struct WordProblemResult {
  Verdict verdict = Verdict::unknown;
  std::vector<RewriteStep> path;  // x -> ... -> y when verdict is yes
  std::size_t states_visited = 0;
  std::string reason;
};

/// Bidirectional breadth-first search over one-step rewrites. `no` is returned
/// only when one side's congruence class was exhausted without meeting the other.
WordProblemResult words_equal(const MonoidPresentation& p, const MonoidElement& x,
                              const MonoidElement& y, const WordBounds& bounds = {});

/// Applies one rewrite step; nullopt when the side being replaced is not contained.
std::optional<MonoidElement> apply_rewrite(const MonoidPresentation& p, const MonoidElement& x,
                                           std::size_t relation, bool forward);
/// Replays a path from x; true iff every step is legal and the end is y.
bool replay_path(const MonoidPresentation& p, const MonoidElement& x, const MonoidElement& y,
                 const std::vector<RewriteStep>& path);

struct EnumerateBounds {
  std::size_t max_elements = 10000;
  std::size_t depth = 6;
  std::size_t max_states = 200000;
};

struct EnumerateResult {
  std::optional<MonoidTable> table;  // present only when complete and certified
  std::string reason;                // why the result is unknown
  std::size_t elements_found = 0;
  std::size_t hypothesised_distinct = 0;  // separations settled by the model check
};

/// Breadth-first generation of the monoid from 0 by adding generators.
EnumerateResult enumerate_monoid(const MonoidPresentation& p, const EnumerateBounds& bounds = {});

/// Evaluates an element in a table through the generator images.
std::size_t evaluate(const MonoidTable& t, const MonoidElement& x);

// ---------------------------------------------------------------------------

/// Terms like "2a+b", "0" for the zero element.
std::string format_element(const MonoidPresentation& p, const MonoidElement& x);
MonoidElement parse_element(const MonoidPresentation& p, std::string_view text);

/// "gens: a b c" followed by "lhs = rhs" lines.
std::string format_presentation(const MonoidPresentation& p);
MonoidPresentation parse_presentation(std::string_view text);

}  // namespace monodyn
