#include <doctest.h>

#include <random>

#include "monodyn/error.hpp"
#include "monodyn/monoid.hpp"
#include "monodyn/sandpile.hpp"
#include "test_support.hpp"

using namespace monodyn;
using test::fixture_graph;

namespace {

MonoidElement el(std::initializer_list<std::uint64_t> c) { return MonoidElement{std::vector<std::uint64_t>(c)}; }

MonoidElement random_element(std::mt19937_64& rng, std::size_t rank, std::uint64_t max) {
  std::uniform_int_distribution<std::uint64_t> d(0, max);
  MonoidElement x{std::vector<std::uint64_t>(rank)};
  for (auto& c : x.coeffs) c = d(rng);
  return x;
}

/// Stabilized configuration of a sink-zero element (coefficients over non-sinks).
ChipConfig stabilized(const Graph& g, const MonoidElement& x) {
  ChipConfig c = zero_config(g);
  std::size_t k = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) c.counts[v] = x.coeffs[k++];
  return stabilize(g, c).config;
}

}  // namespace

TEST_SUITE("monoid") {
  TEST_CASE("graph presentations") {
    auto p = graph_monoid_presentation(fixture_graph("ex41.graph"), false, false);
    CHECK(p.generators == std::vector<std::string>{"u", "v"});
    CHECK(format_presentation(p) == "gens: u v\nu = u+v\nv = u\n");
    auto f = graph_monoid_presentation(fixture_graph("F.graph"), true, true);
    CHECK(format_presentation(f) == "gens: u v\n2u = u+v\n2v = u\n");
    auto single = graph_monoid_presentation(parse_graph("v x\n"), false, false);
    CHECK(single.rank() == 1);
    CHECK(single.relations.empty());
    CHECK_THROWS_AS(graph_monoid_presentation(fixture_graph("rose2.graph"), false, true), DomainError);
  }

  TEST_CASE("order units") {
    auto f = graph_monoid_presentation(fixture_graph("F.graph"), true, true);
    CHECK(order_unit(f) == el({1, 1}));
    CHECK(order_unit(graph_monoid_presentation(fixture_graph("E.graph"), false, false)) == el({1, 1, 1, 1}));
    CHECK_THROWS_AS(order_unit(parse_presentation("gens: a b\n")), DomainError);
  }

  TEST_CASE("presentation text") {
    auto p = parse_presentation("# free-ish\ngens: a b c\n2a+b = c\nc = 0\n");
    CHECK(p.rank() == 3);
    CHECK(p.relations.size() == 2);
    CHECK(parse_presentation(format_presentation(p)).relations.size() == 2);
    CHECK(parse_element(p, "2a + 3c") == el({2, 0, 3}));
    CHECK(parse_element(p, "0") == el({0, 0, 0}));
    CHECK(format_element(p, el({1, 2, 0})) == "a+2b");
    CHECK_THROWS_AS(parse_element(p, "d"), DomainError);
    CHECK_THROWS_AS(parse_presentation("gens: a\na = a\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("a = b\n"), ParseError);
    CHECK_THROWS_AS(parse_presentation("gens: a\na = b\n"), ParseError);
  }

  TEST_CASE("word problem examples") {
    auto p = graph_monoid_presentation(fixture_graph("ex41.graph"), false, false);
    auto uv = words_equal(p, el({1, 0}), el({0, 1}));
    CHECK(uv.verdict == Verdict::yes);
    CHECK(replay_path(p, el({1, 0}), el({0, 1}), uv.path));
    auto same = words_equal(p, el({2, 1}), el({2, 1}));
    CHECK(same.verdict == Verdict::yes);
    CHECK(same.path.empty());
    auto zero = words_equal(p, el({0, 0}), el({1, 0}));
    CHECK(zero.verdict == Verdict::no);
  }

  TEST_CASE("word problem against the sandpile oracle") {
    std::mt19937_64 rng(41);
    int conclusive = 0;
    for (int t = 0; t < 150; ++t) {
      Graph g = test::random_sandpile_graph(rng, 2 + t % 3, 3);
      auto p = graph_monoid_presentation(g, true, true);
      MonoidElement x = random_element(rng, p.rank(), 4), y = random_element(rng, p.rank(), 4);
      if (t % 2 == 0) {  // the stable representative of x
        ChipConfig s = stabilized(g, x);
        y = p.zero();
        std::size_t k = 0;
        for (VertexId v = 0; v < g.vertex_count(); ++v)
          if (!g.is_sink(v)) y.coeffs[k++] = s.counts[v];
      }
      const bool truth = stabilized(g, x).same_counts(stabilized(g, y));
      auto r = words_equal(p, x, y, {8, 100000});
      if (r.verdict == Verdict::yes) {
        CHECK(truth);
        CHECK(replay_path(p, x, y, r.path));
        ++conclusive;
      } else if (r.verdict == Verdict::no) {
        CHECK_FALSE(truth);
        ++conclusive;
      }
    }
    CHECK(conclusive > 100);
  }

  TEST_CASE("translation invariance and depth monotonicity") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 100; ++t) {
      Graph g = test::random_sandpile_graph(rng, 2 + t % 3, 2);
      auto p = graph_monoid_presentation(g, true, true);
      MonoidElement x = random_element(rng, p.rank(), 3), y = random_element(rng, p.rank(), 3);
      auto shallow = words_equal(p, x, y, {3, 50000});
      auto deep = words_equal(p, x, y, {7, 50000});
      if (shallow.verdict != Verdict::unknown && deep.verdict != Verdict::unknown)
        CHECK(shallow.verdict == deep.verdict);
      if (shallow.verdict == Verdict::yes) {
        CHECK(deep.verdict == Verdict::yes);
        MonoidElement z = random_element(rng, p.rank(), 2);
        auto shifted = words_equal(p, x + z, y + z, {shallow.path.size(), 50000});
        CHECK(shifted.verdict == Verdict::yes);
        CHECK(replay_path(p, x + z, y + z, shifted.path));
      }
    }
  }

  TEST_CASE("enumeration examples") {
    auto f = graph_monoid_presentation(fixture_graph("F.graph"), true, true);
    auto rf = enumerate_monoid(f);
    REQUIRE(rf.table);
    CHECK(rf.table->size() == 4);
    CHECK(satisfies_monoid_laws(*rf.table));
    const auto& t = *rf.table;
    const std::size_t x = t.generator_images[1];
    const std::size_t x3 = t.addition[t.addition[x][x]][x];
    CHECK(t.addition[x3][x] == x3);

    auto e42 = enumerate_monoid(graph_monoid_presentation(fixture_graph("ex42.graph"), false, false));
    REQUIRE(e42.table);
    CHECK(e42.table->size() == 2);
    const std::size_t nz = 1 - e42.table->identity;
    CHECK(e42.table->addition[nz][nz] == nz);

    auto free2 = enumerate_monoid(parse_presentation("gens: a b\n"), {10, 6, 200000});
    CHECK_FALSE(free2.table);
    CHECK_FALSE(free2.reason.empty());
  }

  TEST_CASE("enumeration agrees with stable configurations") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 12; ++t) {
      Graph g = test::random_sandpile_graph(rng, 2 + t % 4, 3);
      auto p = graph_monoid_presentation(g, true, true);
      auto r = enumerate_monoid(p);
      REQUIRE(r.table);
      CHECK(same_canonical_table(*r.table, sandpile_monoid(g)));
    }
  }

  TEST_CASE("canonical relabelling detects generator-preserving isomorphism") {
    Graph g = fixture_graph("F.graph");
    MonoidTable t = sandpile_monoid(g);
    MonoidTable c = canonical_relabel(t);
    CHECK(same_canonical_table(t, c));
    MonoidTable swapped = t;
    std::swap(swapped.generator_images[0], swapped.generator_images[1]);
    CHECK_FALSE(same_canonical_table(t, swapped));
  }
}
