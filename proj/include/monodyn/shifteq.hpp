#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "monodyn/int_matrix.hpp"

namespace monodyn {

/// A = R·S and B = S·R.
struct ESWitness {
  IntMatrix r;
  IntMatrix s;
};

/// A^lag = R·S, B^lag = S·R, A·R = R·B, S·A = B·S.
struct SEWitness {
  IntMatrix r;
  IntMatrix s;
  unsigned lag = 1;
};

/// matrices[i] and matrices[i+1] are linked by links[i]:
/// matrices[i] = R·S and matrices[i+1] = S·R.
struct SSEChain {
  std::vector<IntMatrix> matrices;
  std::vector<ESWitness> links;
};

bool verify_elementary(const IntMatrix& a, const IntMatrix& b, const ESWitness& w);
bool verify_se(const IntMatrix& a, const IntMatrix& b, const SEWitness& w);

struct ChainCheck {
  bool valid = true;
  /// Index of the first chain matrix that disagrees with an adjacent link
  /// (matrices[i] != R_i·S_i or matrices[i] != S_{i-1}·R_{i-1}).
  std::optional<std::size_t> failing_index;
};

ChainCheck verify_sse_chain(const SSEChain& chain);

/// Simultaneous row/column permutation: result(i, j) = m(perm[i], perm[j]).
IntMatrix permute(const IntMatrix& m, const std::vector<std::size_t>& perm);

struct CanonicalForm {
  IntMatrix matrix;
  /// matrix = permute(original, perm).
  std::vector<std::size_t> perm;
};

/// Lexicographically least simultaneous permutation of a square matrix.
CanonicalForm canonical_form(const IntMatrix& m);

/// All nonnegative factorizations M = R·S with inner dimension d, entries of
/// R and S bounded by max(M), R without zero column and S without zero row.
/// Ordered lexicographically (R row-major, then S column-major).
std::vector<ESWitness> factorizations(const IntMatrix& m, std::size_t inner_dim);

struct SSESearchBounds {
  unsigned max_depth = 6;
  std::size_t max_inner_dim = 2;
  std::size_t max_nodes = 20000;
};

struct SSESearchResult {
  std::optional<SSEChain> chain;
  std::size_t nodes_explored = 0;
  /// Depth reached when the search stopped without a chain.
  unsigned depth_reached = 0;
  bool node_cap_hit = false;
};

SSESearchResult sse_search(const IntMatrix& a, const IntMatrix& b, const SSESearchBounds& bounds);

struct BowenFranks {
  /// Invariant factors > 1 of I - A.
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;
  friend bool operator==(const BowenFranks&, const BowenFranks&) = default;
};

BowenFranks bowen_franks(const IntMatrix& a);
std::string format_bowen_franks(const BowenFranks& bf);

struct InvariantReport {
  BowenFranks bowen_franks_a;
  BowenFranks bowen_franks_b;
  std::vector<Integer> charpoly_core_a;
  std::vector<Integer> charpoly_core_b;
  bool obstruction = false;
  /// Names of the invariants that differ ("bowen_franks", "charpoly_core").
  std::vector<std::string> mismatches;
};

InvariantReport invariants_report(const IntMatrix& a, const IntMatrix& b);

struct SESearchBounds {
  unsigned max_lag = 4;
  int coeff_bound = 2;
  /// Maximum number of coefficient combinations tried per side.
  std::size_t max_combinations = 200000;
};

struct SESearchResult {
  std::optional<SEWitness> witness;
  std::optional<InvariantReport> obstruction;
  std::size_t r_candidates = 0;
  std::size_t s_candidates = 0;
  bool combination_cap_hit = false;
};

SESearchResult se_search(const IntMatrix& a, const IntMatrix& b, const SESearchBounds& bounds);

}  // namespace monodyn
