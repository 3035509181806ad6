#include <doctest.h>

#include <random>

#include "monodyn/error.hpp"
#include "monodyn/int_matrix.hpp"
#include "test_support.hpp"

using namespace monodyn;

using test::laplace_det;
using test::random_matrix;

TEST_SUITE("int_matrix") {
  TEST_CASE("products follow the definition") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
      IntMatrix a = random_matrix(rng, 3, 4, -5, 5), b = random_matrix(rng, 4, 2, -5, 5);
      IntMatrix p = a * b;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          Integer s = 0;
          for (std::size_t k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
          CHECK(p(i, j) == s);
        }
      IntVector v{a(0, 0), a(0, 1), a(0, 2)};
      IntVector w = row_times(v, a);
      for (std::size_t j = 0; j < 4; ++j) CHECK(w[j] == v[0] * a(0, j) + v[1] * a(1, j) + v[2] * a(2, j));
    }
  }

  TEST_CASE("Bareiss determinant matches cofactor expansion") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + t % 5;
      IntMatrix a = random_matrix(rng, n, n, -9, 9);
      CHECK(determinant(a) == laplace_det(a));
    }
    CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK(determinant(IntMatrix{{1, 2}, {2, 4}}) == 0);
  }

  TEST_CASE("powers and identity") {
    IntMatrix f{{1, 1}, {1, 0}};
    CHECK(power(f, 0) == IntMatrix::identity(2));
    CHECK(power(f, 10) == IntMatrix{{89, 55}, {55, 34}});
    // Arbitrary precision: F(200) exceeds 64 bits.
    IntMatrix big = power(f, 200);
    CHECK(big(0, 1).get_str() == "280571172992510140037611932413038677189525");
  }

  TEST_CASE("matrix text round trip and errors") {
    IntMatrix m{{1, -2, 3}, {0, 4, 5}};
    CHECK(parse_matrix(format_matrix(m)) == m);
    CHECK(parse_matrix("# comment\n2 2\n1 1 # tail\n1 0\n") == IntMatrix{{1, 1}, {1, 0}});
    CHECK_THROWS_AS(parse_matrix("2 2\n1 1\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2 2\n1 x\n1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("2\n1 1\n"), ParseError);
    CHECK(to_string(m) == "[[1,-2,3],[0,4,5]]");
  }

  TEST_CASE("predicates") {
    IntMatrix m{{0, 2}, {0, 1}};
    CHECK(m.has_zero_column());
    CHECK_FALSE(m.has_zero_row());
    CHECK(m.is_nonnegative());
    CHECK(m.max_entry() == 2);
    CHECK(m.transpose() == IntMatrix{{0, 0}, {2, 1}});
    CHECK_FALSE(IntMatrix{{1, -1}}.is_nonnegative());
  }
}
