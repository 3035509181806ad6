#include "monodyn/dimension.hpp"

#include <algorithm>
#include <sstream>

#include "monodyn/error.hpp"
#include "monodyn/smith.hpp"

namespace monodyn {

std::size_t TalentedWindow::generator(VertexId v, int stage) const {
  if (stage < -radius || stage > radius) throw DomainError("stage outside window");
  return v * static_cast<std::size_t>(2 * radius + 1) + static_cast<std::size_t>(stage + radius);
}

TalentedWindow talented_window(const Graph& g, int radius) {
  if (radius < 0) throw DomainError("window radius must be nonnegative");
  TalentedWindow w{g, radius, {}};
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (int i = -radius; i <= radius; ++i) w.presentation.generators.push_back(g.name(v) + "(" + std::to_string(i) + ")");
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) continue;
    for (int i = -radius; i < radius; ++i) {
      MonoidRelation r{w.presentation.zero(), w.presentation.zero()};
      r.lhs.coeffs[w.generator(v, i)] = 1;
      for (const auto& a : g.out(v)) r.rhs.coeffs[w.generator(a.target, i + 1)] += a.multiplicity;
      w.presentation.relations.push_back(std::move(r));
    }
  }
  return w;
}

std::optional<MonoidElement> window_shift(const TalentedWindow& w, const MonoidElement& x, int n) {
  if (x.size() != w.presentation.rank()) throw DomainError("element length does not match window");
  MonoidElement y = w.presentation.zero();
  for (VertexId v = 0; v < w.graph.vertex_count(); ++v)
    for (int i = -w.radius; i <= w.radius; ++i) {
      std::uint64_t c = x.coeffs[w.generator(v, i)];
      if (c == 0) continue;
      int j = i + n;
      if (j < -w.radius || j > w.radius) return std::nullopt;
      y.coeffs[w.generator(v, j)] = c;
    }
  return y;
}

// ---------------------------------------------------------------------------

DimElement make_dim_element(const IntMatrix& a, IntVector vec, std::int64_t stage) {
  if (!a.is_square()) throw DomainError("dimension group matrix must be square");
  if (vec.size() != a.rows())
    throw DomainError("vector of length " + std::to_string(vec.size()) + " for a " + std::to_string(a.rows()) +
                      "x" + std::to_string(a.cols()) + " matrix");
  return DimElement{a, std::move(vec), stage};
}

namespace {

void check_compatible(const DimElement& x, const DimElement& y) {
  if (x.vec.size() != y.vec.size()) throw DomainError("dimension mismatch");
  if (!(x.matrix == y.matrix)) throw DomainError("elements belong to different matrices");
}

bool all_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

}  // namespace

DimElement normalize(const DimElement& x, std::int64_t floor) {
  DimElement y = x;
  const IntMatrix at = x.matrix.transpose();
  while (y.stage > floor) {
    if (all_zero(y.vec)) {
      y.stage = floor;
      break;
    }
    // w·A = vec  <=>  A^T w^T = vec^T
    auto pre = solve_integer(at, y.vec);
    if (!pre) break;
    y.vec = std::move(*pre);
    --y.stage;
  }
  return y;
}

IntVector at_stage(const DimElement& x, std::int64_t m) {
  if (m < x.stage) throw DomainError("cannot move an element to an earlier stage");
  IntVector v = x.vec;
  for (std::int64_t k = x.stage; k < m; ++k) v = row_times(v, x.matrix);
  return v;
}

DimElement operator+(const DimElement& x, const DimElement& y) {
  check_compatible(x, y);
  std::int64_t m = std::max(x.stage, y.stage);
  IntVector a = at_stage(x, m), b = at_stage(y, m);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return DimElement{x.matrix, std::move(a), m};
}

DimElement operator-(const DimElement& x) {
  DimElement y = x;
  for (auto& c : y.vec) c = -c;
  return y;
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(Positivity p) {
  switch (p) {
    case Positivity::positive: return "positive";
    case Positivity::not_positive: return "not_positive";
    case Positivity::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Decision dim_equal(const DimElement& x, const DimElement& y, unsigned max_power) {
  check_compatible(x, y);
  const std::int64_t m = std::max(x.stage, y.stage);
  IntVector a = at_stage(x, m), b = at_stage(y, m);
  IntVector diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  if (all_zero(diff)) return Decision::yes;
  if (determinant(x.matrix) != 0) return Decision::no;
  // (a - b)·A^k = 0 for some k iff it holds for k = n.
  const unsigned n = static_cast<unsigned>(x.matrix.rows());
  for (unsigned k = 1; k <= max_power; ++k) {
    diff = row_times(diff, x.matrix);
    if (all_zero(diff)) return Decision::yes;
    if (k >= n) return Decision::no;
  }
  return Decision::inconclusive;
}

PositivityResult dim_positive(const DimElement& x, unsigned max_power) {
  const bool no_zero_column = !x.matrix.has_zero_column();
  IntVector v = x.vec;
  for (unsigned m = 0;; ++m) {
    if (std::all_of(v.begin(), v.end(), [](const Integer& c) { return sgn(c) >= 0; }))
      return {Positivity::positive, m};
    // Strictly negative times a nonnegative matrix without zero columns stays
    // strictly negative.
    if (no_zero_column && std::all_of(v.begin(), v.end(), [](const Integer& c) { return sgn(c) < 0; }))
      return {Positivity::not_positive, m};
    if (m == max_power) break;
    v = row_times(v, x.matrix);
  }
  return {Positivity::inconclusive, std::nullopt};
}

DimElement delta_shift(const DimElement& x, ShiftDirection direction) {
  DimElement y = x;
  if (direction == ShiftDirection::forward)
    y.vec = row_times(x.vec, x.matrix);
  else
    y.stage = x.stage + 1;
  return y;
}

bool fib_cone_member(const Integer& m, const Integer& n) {
  // phi·m + n >= 0  <=>  t + sqrt(5)·m >= 0 with t = m + 2n.
  const Integer t = m + 2 * n;
  const Integer t2 = t * t, m2_5 = 5 * m * m;
  if (sgn(m) >= 0) return sgn(t) >= 0 || m2_5 >= t2;
  return sgn(t) >= 0 && t2 >= m2_5;
}

DimElement parse_dim_element(const IntMatrix& a, std::string_view text) {
  std::string s(text);
  auto open = s.find('['), close = s.find(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw DomainError("expected '[v1 ... vn]@stage', got '" + s + "'");
  std::istringstream body(s.substr(open + 1, close - open - 1));
  IntVector vec;
  for (std::string w; body >> w;) {
    Integer x;
    if (x.set_str(w, 10) != 0) throw DomainError("not an integer: '" + w + "'");
    vec.push_back(x);
  }
  std::string rest = s.substr(close + 1);
  rest.erase(std::remove_if(rest.begin(), rest.end(), [](char c) { return c == ' '; }), rest.end());
  std::int64_t stage = 0;
  if (!rest.empty()) {
    if (rest[0] != '@') throw DomainError("expected '@stage' after vector");
    try {
      std::size_t used = 0;
      stage = std::stoll(rest.substr(1), &used);
      if (used != rest.size() - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw DomainError("invalid stage in '" + s + "'");
    }
  }
  return make_dim_element(a, std::move(vec), stage);
}

std::string format_dim_element(const DimElement& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.vec.size(); ++i) s += (i ? " " : "") + x.vec[i].get_str();
  return s + "]@" + std::to_string(x.stage);
}

}  // namespace monodyn
