#include <doctest.h>

#include <random>

#include "monodyn/smith.hpp"
#include "test_support.hpp"

using namespace monodyn;

namespace {

/// Greatest common divisor of all k x k minors (0 when all vanish).
Integer determinantal_divisor(const IntMatrix& m, std::size_t k) {
  std::vector<std::size_t> rows(k), cols(k);
  Integer g = 0;
  auto next = [](std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t i = idx.size();
    while (i-- > 0) {
      if (idx[i] < n - idx.size() + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  do {
    for (std::size_t i = 0; i < k; ++i) cols[i] = i;
    do {
      IntMatrix sub(k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rows[a], cols[b]);
      Integer d = test::laplace_det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (next(cols, m.cols()));
  } while (next(rows, m.rows()));
  return g;
}

bool is_diagonal(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

Integer eval(const std::vector<Integer>& coeffs, const Integer& t) {
  Integer v = 0;
  for (const auto& c : coeffs) v = v * t + c;
  return v;
}

}  // namespace

TEST_SUITE("smith") {
  TEST_CASE("Smith form matches determinantal divisors") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 150; ++t) {
      const std::size_t r = 1 + t % 4, c = 1 + (t / 4) % 4;
      IntMatrix m = test::random_matrix(rng, r, c, -9, 9);
      if (t % 7 == 0)  // force rank deficiency
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) * 2;
      SmithForm s = smith_normal_form(m);
      CHECK(s.u * m * s.v == s.d);
      CHECK(is_diagonal(s.d));
      CHECK(abs(test::laplace_det(s.u)) == 1);
      CHECK(abs(test::laplace_det(s.v)) == 1);
      Integer prev = 1;
      for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        Integer dk = determinantal_divisor(m, k);
        Integer expected = dk == 0 ? Integer(0) : Integer(dk / prev);
        CHECK(s.diagonal[k - 1] == expected);
        if (k > 1 && s.diagonal[k - 1] != 0) CHECK(s.diagonal[k - 1] % s.diagonal[k - 2] == 0);
        if (dk != 0) prev = dk;
      }
    }
  }

  TEST_CASE("small examples") {
    auto a = smith_normal_form(IntMatrix{{0, -3}, {-2, 0}});
    CHECK(a.diagonal == std::vector<Integer>{1, 6});
    auto b = smith_normal_form(IntMatrix{{0, -6}, {-1, 0}});
    CHECK(b.diagonal == std::vector<Integer>{1, 6});
    auto z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.rank == 0);
  }

  TEST_CASE("integer kernel and solving") {
    std::mt19937_64 rng(59);
    for (int t = 0; t < 80; ++t) {
      const std::size_t r = 1 + t % 3, c = 2 + t % 4;
      IntMatrix m = test::random_matrix(rng, r, c, -4, 4);
      IntMatrix k = integer_kernel(m);
      const std::size_t rank = smith_normal_form(m).rank;
      CHECK(k.cols() == c - rank);
      if (k.cols() > 0) {
        CHECK(m * k == IntMatrix(r, k.cols()));
        CHECK(smith_normal_form(k).rank == k.cols());
        // Saturated: the kernel lattice has trivial invariant factors.
        for (const auto& d : smith_normal_form(k).diagonal) CHECK(d == 1);
      }
      IntVector x(c);
      std::uniform_int_distribution<long> d(-5, 5);
      for (auto& e : x) e = d(rng);
      IntVector b(r, 0);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) b[i] += m(i, j) * x[j];
      auto sol = solve_integer(m, b);
      REQUIRE(sol);
      for (std::size_t i = 0; i < r; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < c; ++j) s += m(i, j) * (*sol)[j];
        CHECK(s == b[i]);
      }
    }
    CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVector{1}));
    CHECK_FALSE(solve_integer(IntMatrix{{1, 1}, {1, 1}}, IntVector{1, 2}));
  }

  TEST_CASE("characteristic polynomial") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 1 + t % 5;
      IntMatrix a = test::random_matrix(rng, n, n, -5, 5);
      auto p = characteristic_polynomial(a);
      REQUIRE(p.size() == n + 1);
      CHECK(p[0] == 1);
      for (long s = -2; s <= static_cast<long>(n); ++s) {
        IntMatrix ti = IntMatrix::identity(n);
        for (std::size_t i = 0; i < n; ++i) ti(i, i) = s;
        CHECK(eval(p, s) == test::laplace_det(ti - a));
      }
    }
    CHECK(format_polynomial(strip_t_factors(characteristic_polynomial(IntMatrix{{1, 3}, {2, 1}}))) ==
          "t^2 - 2t - 5");
    CHECK(strip_t_factors(characteristic_polynomial(IntMatrix{{1, 1}, {0, 0}})) == std::vector<Integer>{1, -1});
    CHECK(format_polynomial({1, 0, -1}) == "t^2 - 1");
  }
}
