#include "monodyn/smith.hpp"

#include <algorithm>
#include <utility>

#include "monodyn/error.hpp"

namespace monodyn {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[target] += factor * row[source]
void add_row(IntMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += factor * m(source, j);
}

void add_col(IntMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += factor * m(i, source);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm s{IntMatrix::identity(rows), m, IntMatrix::identity(cols), {}, 0};
  IntMatrix& d = s.d;
  const std::size_t diag = std::min(rows, cols);

  for (std::size_t t = 0; t < diag; ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    auto choose_pivot = [&]() -> bool {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (d(i, j) != 0 && (!best || abs(d(i, j)) < abs(d(best->first, best->second)))) best = {i, j};
      if (!best) return false;
      swap_rows(d, t, best->first);
      swap_rows(s.u, t, best->first);
      swap_cols(d, t, best->second);
      swap_cols(s.v, t, best->second);
      return true;
    };
    if (!choose_pivot()) break;

    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = floor_div(d(i, t), d(t, t));
        add_row(d, i, t, -q);
        add_row(s.u, i, t, -q);
        if (d(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = floor_div(d(t, j), d(t, t));
        add_col(d, j, t, -q);
        add_col(s.v, j, t, -q);
        if (d(t, j) != 0) dirty = true;
      }
      if (dirty) {
        // A remainder survived: it is smaller than the pivot, so re-pivot.
        choose_pivot();
        continue;
      }
      // Row and column are clear; enforce divisibility on the trailing block.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      add_row(d, t, *bad_row, 1);
      add_row(s.u, t, *bad_row, 1);
    }
    if (sgn(d(t, t)) < 0) {
      negate_row(d, t);
      negate_row(s.u, t);
    }
  }
  for (std::size_t t = 0; t < diag; ++t) {
    s.diagonal.push_back(d(t, t));
    if (d(t, t) != 0) ++s.rank;
  }
  return s;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  const std::size_t cols = m.cols();
  const std::size_t k = cols - s.rank;
  IntMatrix basis(cols, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < cols; ++i) basis(i, c) = s.v(i, s.rank + c);
  return basis;
}

std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw ShapeError("right-hand side length does not match matrix rows");
  SmithForm s = smith_normal_form(m);
  // D y = U b, x = V y.
  IntVector ub(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) ub[i] += s.u(i, j) * b[j];
  IntVector y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Integer di = i < s.diagonal.size() ? s.diagonal[i] : Integer(0);
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(ub[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
    y[i] = ub[i] / di;
  }
  IntVector x(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) x[i] += s.v(i, j) * y[j];
  return x;
}

std::vector<Integer> characteristic_polynomial(const IntMatrix& a) {
  if (!a.is_square()) throw ShapeError("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier; every division is exact over the integers.
  const std::size_t n = a.rows();
  std::vector<Integer> c(n + 1);
  c[0] = 1;
  IntMatrix mk(n, n);
  const IntMatrix id = IntMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix scaled = id;
    for (std::size_t i = 0; i < n; ++i) scaled(i, i) = c[k - 1];
    mk = a * mk + scaled;
    IntMatrix amk = a * mk;
    Integer trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += amk(i, i);
    Integer q = -trace;
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
    c[k] = q;
  }
  return c;
}

std::vector<Integer> strip_t_factors(std::vector<Integer> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

std::string format_polynomial(const std::vector<Integer>& coeffs) {
  const std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
  std::string s;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Integer& c = coeffs[k];
    if (c == 0) continue;
    const std::size_t power = deg - k;
    Integer mag = abs(c);
    if (s.empty())
      s += sgn(c) < 0 ? "-" : "";
    else
      s += sgn(c) < 0 ? " - " : " + ";
    if (mag != 1 || power == 0) s += mag.get_str();
    if (power >= 1) s += "t";
    if (power >= 2) s += "^" + std::to_string(power);
  }
  return s.empty() ? "0" : s;
}

}  // namespace monodyn
