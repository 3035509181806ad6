#pragma once

#include <optional>
#include <vector>

#include "monodyn/int_matrix.hpp"

namespace monodyn {

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... , d_i >= 0.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  /// Diagonal of D, length min(rows, cols).
  std::vector<Integer> diagonal;
  std::size_t rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Z-basis of the integer kernel {x : M x = 0}, as columns of the result
/// (cols(M) x k). Empty (0 columns) when the kernel is trivial.
IntMatrix integer_kernel(const IntMatrix& m);

/// Some integer x with M x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

/// Coefficients of det(tI - A), leading coefficient first.
std::vector<Integer> characteristic_polynomial(const IntMatrix& a);

/// Drops trailing zero coefficients (the factors of t).
std::vector<Integer> strip_t_factors(std::vector<Integer> coeffs);

/// Human form such as "t^2 - 2t - 5".
std::string format_polynomial(const std::vector<Integer>& coeffs);

}  // namespace monodyn
