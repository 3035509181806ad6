#include <doctest.h>

#include <random>

#include "monodyn/error.hpp"
#include "monodyn/graph.hpp"
#include "test_support.hpp"

using namespace monodyn;

using test::read_fixture;

TEST_SUITE("graph") {
  TEST_CASE("graph E parses with one sink") {
    Graph g = parse_graph(read_fixture("E.graph"));
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 9);
    CHECK(g.sinks() == std::vector<VertexId>{g.id("s")});
    for (auto v : {"u", "v", "z"}) CHECK(g.outdegree(g.id(v)) == 3);
    auto r = structure_report(g);
    CHECK(r.sandpile);
    CHECK(r.unique_sink == g.id("s"));
    CHECK_FALSE(r.strongly_connected);
  }

  TEST_CASE("edge cases and errors") {
    Graph one = parse_graph("v x\n");
    CHECK(one.edge_count() == 0);
    CHECK(one.sinks().size() == 1);
    try {
      parse_graph("v a\ne a b\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("'b'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_graph("v a\nv a\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("v a\nq a\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("v a\ne a a 0\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("v a\nv b\nw a 1\n"), ParseError);
  }

  TEST_CASE("adjacency convention: rows are sources") {
    Graph g = parse_graph(read_fixture("ex41.graph"));
    CHECK(adjacency_matrix(g) == IntMatrix{{1, 1}, {1, 0}});
    CHECK(structure_report(g).strongly_connected);
    Graph rose3 = parse_graph("v v\ne v v 3\n");
    CHECK(adjacency_matrix(rose3) == IntMatrix{{3}});
    CHECK(adjacency_matrix(parse_graph("v a\nv b\nv c\n")) == IntMatrix(3, 3));
    Graph rose2 = parse_graph(read_fixture("rose2.graph"));
    auto r = structure_report(rose2);
    CHECK_FALSE(r.sandpile);
    CHECK(r.strongly_connected);
  }

  TEST_CASE("graph_from_matrix inverts adjacency_matrix") {
    Graph g = graph_from_matrix(IntMatrix{{1, 1}, {1, 1}});
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 4);
    CHECK(g.name(0) == "v1");
    CHECK(adjacency_matrix(graph_from_matrix(IntMatrix{{2}})) == IntMatrix{{2}});
    try {
      graph_from_matrix(IntMatrix{{1, -1}, {0, 0}});
      FAIL("expected an error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("negative entry at (1,2)") != std::string::npos);
    }
    CHECK_THROWS(graph_from_matrix(IntMatrix{{1, 2}}));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> d(0, 3);
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + t % 5;
      IntMatrix a(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
      CHECK(adjacency_matrix(graph_from_matrix(a)) == a);
    }
  }

  TEST_CASE("serialization round trip") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
      Graph g = test::random_graph(rng, 1 + t % 5, 2);
      if (t % 3 == 0)
        for (VertexId v = 0; v < g.vertex_count(); ++v) g.set_weight(v, v + 1);
      Graph h = parse_graph(serialize_graph(g));
      CHECK(h == g);
      CHECK(parse_graph(serialize_graph(h)) == h);
    }
  }

  TEST_CASE("components and reachability agree with transitive closure") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
      Graph g = test::random_graph(rng, 1 + t % 5, 2);
      const auto reach = test::closure(g);
      const std::size_t n = g.vertex_count();
      for (VertexId v = 0; v < n; ++v) {
        auto from = reachable_from(g, v);
        auto to = reaching(g, v);
        for (VertexId w = 0; w < n; ++w) {
          CHECK(from[w] == reach[v][w]);
          CHECK(to[w] == reach[w][v]);
        }
      }
      auto sccs = strongly_connected_components(g);
      std::vector<int> comp(n, -1);
      for (std::size_t c = 0; c < sccs.size(); ++c)
        for (auto v : sccs[c]) comp[v] = static_cast<int>(c);
      for (VertexId v = 0; v < n; ++v)
        for (VertexId w = 0; w < n; ++w) CHECK((comp[v] == comp[w]) == (reach[v][w] && reach[w][v]));
      auto r = structure_report(g);
      std::vector<VertexId> sinks;
      for (VertexId v = 0; v < n; ++v)
        if (g.outdegree(v) == 0) sinks.push_back(v);
      CHECK(r.sinks == sinks);
      bool sandpile = sinks.size() == 1;
      for (VertexId v = 0; sandpile && v < n; ++v) sandpile = reach[v][sinks[0]];
      CHECK(r.sandpile == sandpile);
      CHECK(r.strongly_connected == (sccs.size() == 1));
    }
  }

  TEST_CASE("cycle exits agree with simple-cycle enumeration") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 500; ++t) {
      Graph g = test::random_graph(rng, 1 + t % 5, 2, 0.25 + 0.05 * (t % 5));
      auto r = every_cycle_has_exit(g);
      CHECK(r.every_cycle_has_exit == test::brute_every_cycle_has_exit(g));
      if (!r.every_cycle_has_exit) {
        REQUIRE_FALSE(r.witness.empty());
        for (std::size_t i = 0; i < r.witness.size(); ++i) {
          auto v = r.witness[i], next = r.witness[(i + 1) % r.witness.size()];
          CHECK(g.outdegree(v) == 1);
          CHECK(g.multiplicity(v, next) == 1);
        }
      }
    }
  }

  TEST_CASE("cycle exit examples") {
    auto loop = every_cycle_has_exit(parse_graph(read_fixture("loop.graph")));
    CHECK_FALSE(loop.every_cycle_has_exit);
    CHECK(loop.witness == std::vector<VertexId>{0});
    CHECK(every_cycle_has_exit(parse_graph(read_fixture("ex41.graph"))).every_cycle_has_exit);
    CHECK_FALSE(every_cycle_has_exit(parse_graph(read_fixture("left.graph"))).every_cycle_has_exit);
  }
}
