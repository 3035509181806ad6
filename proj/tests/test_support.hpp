#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "monodyn/graph.hpp"

namespace monodyn::test {

/// Random multigraph on `n` vertices named a, b, c, ... with each ordered pair
/// (loops included) carrying 0..max_mult edges.
inline Graph random_graph(std::mt19937_64& rng, std::size_t n, std::uint64_t max_mult, double density = 0.35) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex(std::string(1, static_cast<char>('a' + i)));
  std::bernoulli_distribution edge(density);
  std::uniform_int_distribution<std::uint64_t> mult(1, max_mult);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (edge(rng)) g.add_edge(i, j, mult(rng));
  return g;
}

/// Random sandpile graph: vertex 0..n-2 non-sinks with outdegree 1..max_out
/// (loops allowed), vertex n-1 the sink; vertex i always has a path towards
/// the sink through an edge to some vertex j > i.
inline Graph random_sandpile_graph(std::mt19937_64& rng, std::size_t n, std::uint64_t max_out) {
  Graph g;
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_vertex("x" + std::to_string(i));
  g.add_vertex("s");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::uniform_int_distribution<std::uint64_t> deg(1, max_out);
    const std::uint64_t d = deg(rng);
    std::uniform_int_distribution<std::size_t> forward(i + 1, n - 1), any(0, n - 1);
    g.add_edge(i, forward(rng));
    for (std::uint64_t k = 1; k < d; ++k) g.add_edge(i, any(rng));
  }
  return g;
}

/// Floyd-Warshall style transitive closure (paths of length >= 0).
inline std::vector<std::vector<bool>> closure(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    r[i][i] = true;
    for (const auto& a : g.out(i)) r[i][a.target] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

/// All simple cycles as vertex sequences starting at their least vertex.
inline std::vector<std::vector<VertexId>> simple_cycles(const Graph& g) {
  std::vector<std::vector<VertexId>> out;
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> path;
  std::vector<bool> on(n, false);
  auto dfs = [&](auto&& self, VertexId start, VertexId v) -> void {
    for (const auto& a : g.out(v)) {
      if (a.target == start) {
        out.push_back(path);
      } else if (a.target > start && !on[a.target]) {
        on[a.target] = true;
        path.push_back(a.target);
        self(self, start, a.target);
        path.pop_back();
        on[a.target] = false;
      }
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    path = {s};
    on.assign(n, false);
    on[s] = true;
    dfs(dfs, s, s);
  }
  return out;
}

/// A cycle has an exit iff one of its vertices emits an edge besides the
/// cycle edge, i.e. has total outdegree at least 2.
inline bool brute_every_cycle_has_exit(const Graph& g) {
  for (const auto& c : simple_cycles(g)) {
    bool exit = false;
    for (auto v : c) exit = exit || g.outdegree(v) >= 2;
    if (!exit) return false;
  }
  return true;
}

}  // namespace monodyn::test

#include <fstream>
#include <sstream>

#include "monodyn/int_matrix.hpp"

namespace monodyn::test {

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(MONODYN_FIXTURES) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Graph fixture_graph(const std::string& name) { return parse_graph(read_fixture(name)); }

/// Cofactor expansion along the first row.
inline Integer laplace_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Integer sum = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = a(i, k);
    Integer term = a(0, j) * laplace_det(minor);
    sum += (j % 2 == 0) ? term : Integer(-term);
  }
  return sum;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace monodyn::test
