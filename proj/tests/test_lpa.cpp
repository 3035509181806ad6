#include <doctest.h>

#include <numeric>
#include <random>

#include "monodyn/error.hpp"
#include "monodyn/lpa.hpp"
#include "monodyn/sandpile.hpp"
#include "test_support.hpp"

using namespace monodyn;
using test::fixture_graph;

namespace {

/// Condition (1) via the transitive closure and simple-cycle enumeration.
bool brute_cofinal(const Graph& g) {
  const auto reach = test::closure(g);
  const auto cycles = test::simple_cycles(g);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (VertexId s = 0; s < g.vertex_count(); ++s)
      if (g.is_sink(s) && !reach[v][s]) return false;
    for (const auto& c : cycles) {
      bool hit = false;
      for (auto w : c) hit = hit || reach[v][w];
      if (!hit) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("lpa") {
  TEST_CASE("three graphs of the classification example") {
    const Graph left = fixture_graph("left.graph"), middle = fixture_graph("middle.graph"),
                right = fixture_graph("right.graph");
    auto l = lpa_simple(left);
    CHECK_FALSE(l.simple);
    CHECK(l.failing_condition == SimplicityFailure::exitless_cycle);
    CHECK(l.cycle.size() == 2);
    auto m = lpa_simple(middle);
    CHECK_FALSE(m.simple);
    CHECK(m.failing_condition == SimplicityFailure::cofinality);
    CHECK(m.witness_vertex == middle.id("c"));
    CHECK(lpa_simple(right).simple);
  }

  TEST_CASE("simplicity examples") {
    CHECK(lpa_simple(fixture_graph("rose2.graph")).simple);
    auto loop = lpa_simple(fixture_graph("loop.graph"));
    CHECK_FALSE(loop.simple);
    CHECK(loop.failing_condition == SimplicityFailure::exitless_cycle);
    // Two sinks: neither reaches the other.
    auto two = lpa_simple(parse_graph("v a\nv b\nv c\ne a b\ne a c\n"));
    CHECK(two.failing_condition == SimplicityFailure::cofinality);
    CHECK(two.unreached_sink == 2u);
  }

  TEST_CASE("zorn condition") {
    CHECK(lpa_zorn(fixture_graph("ex41.graph")));
    CHECK_FALSE(lpa_zorn(fixture_graph("loop.graph")));
    CHECK(lpa_zorn(parse_graph("v a\nv b\ne a b\n")));
  }

  TEST_CASE("classifiers agree with brute force") {
    std::mt19937_64 rng(97);
    for (int t = 0; t < 600; ++t) {
      Graph g = test::random_graph(rng, 1 + t % 5, 2, 0.2 + 0.05 * (t % 6));
      const bool exits = test::brute_every_cycle_has_exit(g);
      CHECK(lpa_zorn(g) == exits);
      auto v = lpa_simple(g);
      CHECK(v.simple == (brute_cofinal(g) && exits));
      CHECK(v.simple == (v.failing_condition == SimplicityFailure::none));
      if (v.failing_condition == SimplicityFailure::cofinality) {
        REQUIRE(v.witness_vertex);
        const auto reach = reachable_from(g, *v.witness_vertex);
        if (v.unreached_sink) {
          CHECK_FALSE(reach[*v.unreached_sink]);
        } else {
          REQUIRE_FALSE(v.cycle.empty());
          for (auto w : v.cycle) CHECK_FALSE(reach[w]);
        }
      }
    }
  }

  TEST_CASE("gcd conditions") {
    CHECK(matrix_leavitt_iso(2, 1, 2, 3));
    CHECK_FALSE(matrix_leavitt_iso(2, 1, 3, 1));
    CHECK(matrix_leavitt_iso(5, 2, 5, 6));
    CHECK(higman_thompson_iso(2, 1, 2, 3));
    CHECK_FALSE(higman_thompson_iso(4, 3, 4, 5));
    CHECK(higman_thompson_iso(4, 2, 4, 5));
    CHECK_THROWS_AS(matrix_leavitt_iso(1, 1, 2, 1), DomainError);
    CHECK_THROWS_AS(higman_thompson_iso(2, 0, 2, 1), DomainError);
    for (long n = 2; n <= 6; ++n)
      for (long r = 1; r <= 10; ++r)
        for (long m = 2; m <= 6; ++m)
          for (long s = 1; s <= 10; ++s) {
            const bool x = matrix_leavitt_iso(n, r, m, s);
            CHECK(x == higman_thompson_iso(n, r, m, s));
            CHECK(x == matrix_leavitt_iso(m, s, n, r));
            CHECK(matrix_leavitt_iso(n, r, n, r));
          }
  }

  TEST_CASE("plain comparisons") {
    const Graph e = fixture_graph("E.graph");
    auto same = kp_compare(e, e, CompareMode::plain, MonoidFlavor::graph);
    CHECK(same.kind == CompareKind::iso_witness_found);
    CHECK(same.identity);

    const Graph ex41 = fixture_graph("ex41.graph"), rose = fixture_graph("rose2.graph");
    auto iso = kp_compare(ex41, rose, CompareMode::plain, MonoidFlavor::graph);
    REQUIRE(iso.kind == CompareKind::iso_witness_found);
    REQUIRE(iso.table_e);
    REQUIRE(iso.table_f);
    CHECK(iso.table_e->size() == 2);
    CHECK(is_unit_preserving_iso(*iso.table_e, table_order_unit(*iso.table_e), *iso.table_f,
                                 table_order_unit(*iso.table_f), iso.generator_images));

    auto sizes = kp_compare(fixture_graph("F.graph"), e, CompareMode::plain, MonoidFlavor::sandpile);
    CHECK(sizes.kind == CompareKind::not_iso);
    CHECK(sizes.invariant == "size");
    CHECK(sizes.table_e->size() == 4);
    CHECK(sizes.table_f->size() == 27);
  }

  TEST_CASE("plain comparison distinguishes by order unit") {
    // Both sandpile monoids are Z/2-like {0, x} vs the same shape, but the
    // second graph's order unit is the identity.
    const Graph a = parse_graph("v a\nv s\ne a s\ne a a\n");
    const Graph b = parse_graph("v a\nv b\nv s\ne a s\ne a a\ne b s\n");
    auto r = kp_compare(a, b, CompareMode::plain, MonoidFlavor::sandpile);
    REQUIRE(r.table_e);
    REQUIRE(r.table_f);
    CHECK(r.table_e->size() == r.table_f->size());
    if (r.kind == CompareKind::iso_witness_found)
      CHECK(is_unit_preserving_iso(*r.table_e, table_order_unit(*r.table_e), *r.table_f,
                                   table_order_unit(*r.table_f), r.generator_images));
    else
      CHECK(r.kind == CompareKind::not_iso);
  }

  TEST_CASE("graded comparisons") {
    const Graph a = graph_from_matrix(IntMatrix{{2}}), b = graph_from_matrix(IntMatrix{{1, 1}, {1, 1}});
    auto r = kp_compare(a, b, CompareMode::graded, MonoidFlavor::graph);
    REQUIRE(r.kind == CompareKind::iso_witness_found);
    REQUIRE(r.se_witness);
    CHECK(verify_se(adjacency_matrix(a), adjacency_matrix(b), *r.se_witness));

    auto o = kp_compare(a, graph_from_matrix(IntMatrix{{3}}), CompareMode::graded, MonoidFlavor::graph);
    CHECK(o.kind == CompareKind::not_iso);
    REQUIRE(o.invariants);
    CHECK(o.invariants->obstruction);

    auto u = kp_compare(graph_from_matrix(IntMatrix{{1, 3}, {2, 1}}), graph_from_matrix(IntMatrix{{1, 6}, {1, 1}}),
                        CompareMode::graded, MonoidFlavor::graph);
    CHECK(u.kind != CompareKind::not_iso);
    if (u.kind == CompareKind::iso_witness_found) {
      REQUIRE(u.se_witness);
      CHECK(verify_se(IntMatrix{{1, 3}, {2, 1}}, IntMatrix{{1, 6}, {1, 1}}, *u.se_witness));
    }
  }

  TEST_CASE("sandpile flavor requires sandpile graphs") {
    const Graph rose = fixture_graph("rose2.graph");
    CHECK_THROWS_AS(kp_compare(rose, fixture_graph("ex41.graph"), CompareMode::plain, MonoidFlavor::sandpile),
                    DomainError);
  }
}
