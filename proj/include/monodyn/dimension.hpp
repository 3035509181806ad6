#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "monodyn/graph.hpp"
#include "monodyn/int_matrix.hpp"
#include "monodyn/monoid.hpp"

namespace monodyn {

/// Finite window [-radius, radius] of the talented monoid of a graph.
struct TalentedWindow {
  Graph graph;
  int radius = 0;
  /// Generators v(i), vertex-major and stage-minor; relations
  /// v(i) = sum over edges e from v of r(e)(i+1) for non-sink v, i in [-k, k-1].
  MonoidPresentation presentation;

  std::size_t generator(VertexId v, int stage) const;
};

TalentedWindow talented_window(const Graph& g, int radius);

/// The Z-action n·v(i) = v(i+n); nullopt when the support leaves the window.
std::optional<MonoidElement> window_shift(const TalentedWindow& w, const MonoidElement& x, int n);

/// Element (vec, stage) of the direct limit of Z^n under v -> v·A.
struct DimElement {
  IntMatrix matrix;
  IntVector vec;
  std::int64_t stage = 0;
};

DimElement make_dim_element(const IntMatrix& a, IntVector vec, std::int64_t stage);

/// Same element in the least stage (not below `floor`) reachable through exact
/// integer preimages under A.
DimElement normalize(const DimElement& x, std::int64_t floor = 0);

DimElement operator+(const DimElement& x, const DimElement& y);
DimElement operator-(const DimElement& x);
/// Representative at a later stage: (vec·A^(m - stage), m).
IntVector at_stage(const DimElement& x, std::int64_t m);

enum class Decision { yes, no, inconclusive };
std::string_view to_string(Decision d);

/// Equality in the direct limit. Exact when det(A) != 0, and also once
/// max_power >= n (the kernels of A^k stabilise by k = n).
Decision dim_equal(const DimElement& x, const DimElement& y, unsigned max_power);

enum class Positivity { positive, not_positive, inconclusive };
std::string_view to_string(Positivity p);

struct PositivityResult {
  Positivity verdict = Positivity::inconclusive;
  /// Power m at which vec·A^m became entrywise >= 0 (positive) or < 0 (not positive).
  std::optional<unsigned> witness_power;
};

PositivityResult dim_positive(const DimElement& x, unsigned max_power);

enum class ShiftDirection { forward, backward };
DimElement delta_shift(const DimElement& x, ShiftDirection direction);

/// Exact test of ((1 + sqrt 5)/2)·m + n >= 0.
bool fib_cone_member(const Integer& m, const Integer& n);

/// "[v1 v2 ... vn]@stage"
DimElement parse_dim_element(const IntMatrix& a, std::string_view text);
std::string format_dim_element(const DimElement& x);

}  // namespace monodyn
