#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace monodyn {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<const Integer> entries() const noexcept { return entries_; }
  std::span<const Integer> row(std::size_t i) const {
    return std::span<const Integer>(entries_).subspan(i * cols_, cols_);
  }

  bool is_nonnegative() const;
  bool has_zero_column() const;
  bool has_zero_row() const;
  Integer max_entry() const;
  IntMatrix transpose() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  /// Lexicographic on (rows, cols, entries); used for deterministic ordering.
  friend bool operator<(const IntMatrix& a, const IntMatrix& b);

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

IntMatrix power(const IntMatrix& a, unsigned exponent);

/// Row vector times matrix.
IntVector row_times(std::span<const Integer> v, const IntMatrix& a);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& a);

/// Matrix file: first line "<rows> <cols>", then rows of integers. '#' comments.
IntMatrix parse_matrix(std::string_view text);
std::string format_matrix(const IntMatrix& a);

/// Compact one-line form "[[1,1],[1,0]]" for messages and traces.
std::string to_string(const IntMatrix& a);

}  // namespace monodyn
