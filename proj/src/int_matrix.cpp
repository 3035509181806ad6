#include "monodyn/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "monodyn/error.hpp"

namespace monodyn {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols)
    throw ShapeError("entry count " + std::to_string(entries_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged matrix literal");
    for (long x : r) entries_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return sgn(x) >= 0; });
}

bool IntMatrix::has_zero_column() const {
  for (std::size_t j = 0; j < cols_; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < rows_ && zero; ++i) zero = (*this)(i, j) == 0;
    if (zero) return true;
  }
  return false;
}

bool IntMatrix::has_zero_row() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    auto r = row(i);
    if (std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; })) return true;
  }
  return false;
}

Integer IntMatrix::max_entry() const {
  Integer best = 0;
  for (const auto& x : entries_)
    if (x > best) best = x;
  return best;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool operator<(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                      b.entries_.end());
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("sum of mismatched shapes");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] += b.entries_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("difference of mismatched shapes");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] -= b.entries_[k];
  return c;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_)
    throw ShapeError("cannot multiply " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                     " by " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix power(const IntMatrix& a, unsigned exponent) {
  if (!a.is_square()) throw ShapeError("power of a non-square matrix");
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

IntVector row_times(std::span<const Integer> v, const IntMatrix& a) {
  if (v.size() != a.rows())
    throw ShapeError("vector of length " + std::to_string(v.size()) + " times " +
                     std::to_string(a.rows()) + "-row matrix");
  IntVector out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * a(i, j);
  }
  return out;
}

Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

std::string strip_comment(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return line;
}

}  // namespace

IntMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::size_t rows = 0, cols = 0;
  bool have_header = false;
  std::vector<Integer> entries;
  std::size_t rows_read = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream tokens(strip_comment(line));
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (!have_header) {
      if (words.size() != 2) throw ParseError(lineno, "expected header '<rows> <cols>'");
      try {
        long r = std::stol(words[0]), c = std::stol(words[1]);
        if (r <= 0 || c <= 0) throw ParseError(lineno, "matrix dimensions must be positive");
        rows = static_cast<std::size_t>(r);
        cols = static_cast<std::size_t>(c);
      } catch (const std::logic_error&) {
        throw ParseError(lineno, "expected header '<rows> <cols>'");
      }
      have_header = true;
      continue;
    }
    if (rows_read == rows) throw ParseError(lineno, "more rows than declared");
    if (words.size() != cols)
      throw ParseError(lineno, "expected " + std::to_string(cols) + " entries, found " +
                                   std::to_string(words.size()));
    for (const auto& w : words) {
      Integer x;
      if (x.set_str(w, 10) != 0) throw ParseError(lineno, "not an integer: '" + w + "'");
      entries.push_back(x);
    }
    ++rows_read;
  }
  if (!have_header) throw ParseError(0, "empty matrix file");
  if (rows_read != rows)
    throw ParseError(lineno, "expected " + std::to_string(rows) + " rows, found " +
                                 std::to_string(rows_read));
  return IntMatrix(rows, cols, std::move(entries));
}

std::string format_matrix(const IntMatrix& a) {
  std::ostringstream out;
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << a(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

std::string to_string(const IntMatrix& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < a.cols(); ++j) s += (j ? "," : "") + a(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

}  // namespace monodyn
