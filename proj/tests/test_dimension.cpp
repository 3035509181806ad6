#include <doctest.h>

#include <cmath>
#include <random>

#include "monodyn/dimension.hpp"
#include "monodyn/error.hpp"
#include "test_support.hpp"

using namespace monodyn;

namespace {

const IntMatrix fib{{1, 1}, {1, 0}};

DimElement dim(const IntMatrix& a, std::initializer_list<long> v, std::int64_t stage) {
  IntVector vec;
  for (long x : v) vec.push_back(x);
  return make_dim_element(a, vec, stage);
}

DimElement random_element(std::mt19937_64& rng, const IntMatrix& a, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  std::uniform_int_distribution<std::int64_t> s(0, 4);
  IntVector vec(a.rows());
  for (auto& x : vec) x = d(rng);
  return make_dim_element(a, vec, s(rng));
}

}  // namespace

TEST_SUITE("dimension") {
  TEST_CASE("talented windows") {
    auto rose = talented_window(test::fixture_graph("rose2.graph"), 1);
    CHECK(rose.presentation.generators == std::vector<std::string>{"v(-1)", "v(0)", "v(1)"});
    CHECK(format_presentation(rose.presentation) == "gens: v(-1) v(0) v(1)\nv(-1) = 2v(0)\nv(0) = 2v(1)\n");
    auto sink = talented_window(parse_graph("v s\n"), 3);
    CHECK(sink.presentation.relations.empty());
    auto ex41 = talented_window(test::fixture_graph("ex41.graph"), 0);
    CHECK(ex41.presentation.generators == std::vector<std::string>{"u(0)", "v(0)"});
    CHECK(ex41.presentation.relations.empty());
    CHECK_THROWS_AS(talented_window(parse_graph("v s\n"), -1), DomainError);
  }

  TEST_CASE("window relations certify the expected identities") {
    auto w = talented_window(test::fixture_graph("rose2.graph"), 2);
    const auto& p = w.presentation;
    auto v0 = p.unit(w.generator(0, 0));
    MonoidElement two_v1 = p.zero();
    two_v1.coeffs[w.generator(0, 1)] = 2;
    MonoidElement four_v1 = p.zero();
    four_v1.coeffs[w.generator(0, 1)] = 4;
    auto a = words_equal(p, v0, two_v1);
    CHECK(a.verdict == Verdict::yes);
    CHECK(replay_path(p, v0, two_v1, a.path));
    auto b = words_equal(p, p.unit(w.generator(0, -1)), four_v1);
    CHECK(b.verdict == Verdict::yes);
    CHECK(replay_path(p, p.unit(w.generator(0, -1)), four_v1, b.path));
  }

  TEST_CASE("window shift") {
    auto w = talented_window(test::fixture_graph("ex41.graph"), 1);
    auto x = w.presentation.unit(w.generator(0, -1));
    auto y = window_shift(w, x, 2);
    REQUIRE(y);
    CHECK(*y == w.presentation.unit(w.generator(0, 1)));
    CHECK_FALSE(window_shift(w, x, 3));
  }

  TEST_CASE("equality examples") {
    CHECK(dim_equal(dim(fib, {1, 0}, 0), dim(fib, {1, 1}, 1), 64) == Decision::yes);
    CHECK(dim_equal(dim(fib, {1, 0}, 0), dim(fib, {0, 1}, 0), 64) == Decision::no);
    CHECK(dim_equal(dim(fib, {0, 0}, 3), dim(fib, {0, 0}, 7), 64) == Decision::yes);
    IntMatrix other{{2}};
    CHECK_THROWS_AS(dim_equal(dim(fib, {1, 0}, 0), dim(other, {1}, 0), 4), DomainError);
    CHECK_THROWS_AS(dim(fib, {1}, 0), DomainError);
  }

  TEST_CASE("equality with a singular matrix") {
    IntMatrix a{{1, 1}, {1, 1}};
    // (1,-1)·A = 0, so (1,0) and (0,1) agree one stage later.
    CHECK(dim_equal(dim(a, {1, 0}, 0), dim(a, {0, 1}, 0), 64) == Decision::yes);
    CHECK(dim_equal(dim(a, {1, 0}, 0), dim(a, {0, 2}, 0), 64) == Decision::no);
    CHECK(dim_equal(dim(a, {1, 0}, 0), dim(a, {0, 1}, 0), 0) == Decision::inconclusive);
    IntMatrix nil{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
    CHECK(dim_equal(dim(nil, {1, 0, 0}, 0), dim(nil, {0, 0, 0}, 0), 64) == Decision::yes);
  }

  TEST_CASE("normalization is coherent") {
    std::mt19937_64 rng(67);
    const std::vector<IntMatrix> ms{fib, IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 1}, {1, 1}},
                                    IntMatrix{{1, 3}, {2, 1}}};
    for (int t = 0; t < 200; ++t) {
      const IntMatrix& a = ms[t % ms.size()];
      DimElement x = random_element(rng, a, 9);
      DimElement n = normalize(x);
      CHECK(n.stage <= x.stage);
      CHECK(dim_equal(x, n, 64) == Decision::yes);
    }
    // (1,1)@1 on the Fibonacci matrix descends to (1,0)@0.
    DimElement n = normalize(dim(fib, {1, 1}, 1));
    CHECK(n.stage == 0);
    CHECK(n.vec == IntVector{1, 0});
  }

  TEST_CASE("positivity examples") {
    auto a = dim_positive(dim(fib, {-1, 2}, 0), 64);
    CHECK(a.verdict == Positivity::positive);
    CHECK(a.witness_power == 2u);
    auto b = dim_positive(dim(fib, {-2, 3}, 0), 64);
    CHECK(b.verdict == Positivity::not_positive);
    CHECK(dim_positive(dim(fib, {0, 0}, 5), 0).verdict == Positivity::positive);
    IntMatrix zero_col{{1, 0}, {1, 0}};
    CHECK(dim_positive(dim(zero_col, {-1, -1}, 0), 10).verdict == Positivity::inconclusive);
  }

  TEST_CASE("cone closure and order automorphism") {
    std::mt19937_64 rng(71);
    const std::vector<IntMatrix> ms{fib, IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{1, 3}, {2, 1}}};
    std::size_t positives = 0;
    for (int t = 0; t < 400; ++t) {
      const IntMatrix& a = ms[t % ms.size()];
      DimElement x = random_element(rng, a, 20), y = random_element(rng, a, 20);
      auto px = dim_positive(x, 64), py = dim_positive(y, 64);
      if (px.verdict == Positivity::positive && py.verdict == Positivity::positive) {
        ++positives;
        CHECK(dim_positive(x + y, 64).verdict == Positivity::positive);
      }
      auto fx = dim_positive(delta_shift(x, ShiftDirection::forward), 64);
      if (px.verdict != Positivity::inconclusive && fx.verdict != Positivity::inconclusive)
        CHECK((px.verdict == Positivity::positive) == (fx.verdict == Positivity::positive));
    }
    CHECK(positives > 20);
  }

  TEST_CASE("shift examples") {
    DimElement f = delta_shift(dim(fib, {1, 0}, 0), ShiftDirection::forward);
    CHECK(f.vec == IntVector{1, 1});
    CHECK(f.stage == 0);
    DimElement x = dim(fib, {1, 0}, 0);
    DimElement round = delta_shift(delta_shift(x, ShiftDirection::backward), ShiftDirection::forward);
    CHECK(dim_equal(round, x, 64) == Decision::yes);
    DimElement z = delta_shift(dim(fib, {0, 0}, 2), ShiftDirection::forward);
    CHECK(z.vec == IntVector{0, 0});
  }

  TEST_CASE("golden-ratio cone") {
    CHECK(fib_cone_member(1, 0));
    CHECK_FALSE(fib_cone_member(-2, 3));
    CHECK(fib_cone_member(0, 0));
    const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
    for (long m = -60; m <= 60; ++m)
      for (long n = -60; n <= 60; ++n) {
        const long double v = phi * m + n;
        // phi is irrational, so phi*m + n = 0 only at the origin.
        CHECK(fib_cone_member(m, n) == (v >= 0.0L));
      }
  }

  TEST_CASE("text form") {
    DimElement x = parse_dim_element(fib, "[3 -4]@2");
    CHECK(x.vec == IntVector{3, -4});
    CHECK(x.stage == 2);
    CHECK(format_dim_element(x) == "[3 -4]@2");
    CHECK(parse_dim_element(fib, "[1 1]").stage == 0);
    CHECK_THROWS_AS(parse_dim_element(fib, "[1 1 1]@0"), DomainError);
    CHECK_THROWS_AS(parse_dim_element(fib, "1 1"), DomainError);
    CHECK_THROWS_AS(parse_dim_element(fib, "[1 x]@0"), DomainError);
    CHECK_THROWS_AS(parse_dim_element(fib, "[1 1]@y"), DomainError);
  }
}
