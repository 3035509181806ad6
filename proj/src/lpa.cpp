#include "monodyn/lpa.hpp"

#include <algorithm>
#include <numeric>

#include "monodyn/error.hpp"
#include "monodyn/sandpile.hpp"

namespace monodyn {

std::string_view to_string(SimplicityFailure f) {
  switch (f) {
    case SimplicityFailure::none: return "none";
    case SimplicityFailure::cofinality: return "cofinality";
    case SimplicityFailure::exitless_cycle: return "exitless_cycle";
  }
  return "none";
}

SimplicityVerdict lpa_simple(const Graph& g) {
  SimplicityVerdict out;
  // Targets ordered by least vertex: sinks and cyclic components.
  struct Target {
    VertexId least;
    std::vector<VertexId> members;
    bool sink;
  };
  std::vector<Target> targets;
  for (const auto& comp : strongly_connected_components(g)) {
    if (comp.size() == 1 && g.is_sink(comp[0]))
      targets.push_back({comp[0], comp, true});
    else if (is_cyclic_component(g, comp))
      targets.push_back({comp.front(), comp, false});
  }
  std::sort(targets.begin(), targets.end(), [](const Target& a, const Target& b) { return a.least < b.least; });

  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto reach = reachable_from(g, v);
    for (const auto& t : targets) {
      bool hit = std::any_of(t.members.begin(), t.members.end(), [&](VertexId w) { return reach[w]; });
      if (hit) continue;
      out.simple = false;
      out.failing_condition = SimplicityFailure::cofinality;
      out.witness_vertex = v;
      if (t.sink)
        out.unreached_sink = t.least;
      else
        out.cycle = cycle_in_component(g, t.members);
      return out;
    }
  }
  auto exits = every_cycle_has_exit(g);
  if (!exits.every_cycle_has_exit) {
    out.simple = false;
    out.failing_condition = SimplicityFailure::exitless_cycle;
    out.cycle = std::move(exits.witness);
  }
  return out;
}

bool lpa_zorn(const Graph& g) { return every_cycle_has_exit(g).every_cycle_has_exit; }

namespace {

bool gcd_condition(long n, long r, long m, long s) {
  if (n < 2 || m < 2) throw DomainError("n and m must be at least 2");
  if (r < 1 || s < 1) throw DomainError("r and s must be at least 1");
  return n == m && std::gcd(r, n - 1) == std::gcd(s, n - 1);
}

}  // namespace

bool matrix_leavitt_iso(long n, long r, long m, long s) { return gcd_condition(n, r, m, s); }
bool higman_thompson_iso(long n, long r, long m, long s) { return gcd_condition(n, r, m, s); }

CompareMode parse_compare_mode(std::string_view s) {
  if (s == "plain") return CompareMode::plain;
  if (s == "graded") return CompareMode::graded;
  throw DomainError("unknown comparison mode '" + std::string(s) + "' (expected plain or graded)");
}

MonoidFlavor parse_monoid_flavor(std::string_view s) {
  if (s == "graph") return MonoidFlavor::graph;
  if (s == "sandpile") return MonoidFlavor::sandpile;
  throw DomainError("unknown monoid flavor '" + std::string(s) + "' (expected graph or sandpile)");
}

std::string_view to_string(CompareMode m) { return m == CompareMode::plain ? "plain" : "graded"; }
std::string_view to_string(MonoidFlavor f) { return f == MonoidFlavor::graph ? "graph" : "sandpile"; }

std::string_view to_string(CompareKind k) {
  switch (k) {
    case CompareKind::iso_witness_found: return "iso_witness_found";
    case CompareKind::not_iso: return "not_iso";
    case CompareKind::unknown: return "unknown";
  }
  return "unknown";
}

std::size_t table_order_unit(const MonoidTable& t) {
  std::size_t x = t.identity;
  for (auto g : t.generator_images) x = t.addition[x][g];
  return x;
}

bool is_unit_preserving_iso(const MonoidTable& a, std::size_t unit_a, const MonoidTable& b, std::size_t unit_b,
                            const std::vector<std::size_t>& images) {
  if (a.size() != b.size() || images.size() != a.generator_images.size()) return false;
  for (auto i : images)
    if (i >= b.size()) return false;
  // Extend along a breadth-first discovery of a from its identity.
  std::vector<std::size_t> phi(a.size(), a.size());
  phi[a.identity] = b.identity;
  std::vector<std::size_t> queue{a.identity};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t x = queue[head];
    for (std::size_t g = 0; g < images.size(); ++g) {
      const std::size_t y = a.addition[x][a.generator_images[g]];
      const std::size_t image = b.addition[phi[x]][images[g]];
      if (phi[y] == a.size()) {
        phi[y] = image;
        queue.push_back(y);
      } else if (phi[y] != image) {
        return false;
      }
    }
  }
  if (queue.size() != a.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (auto p : phi) {
    if (used[p]) return false;
    used[p] = true;
  }
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      if (phi[a.addition[x][y]] != b.addition[phi[x]][phi[y]]) return false;
  return phi[unit_a] == unit_b;
}

namespace {

std::optional<MonoidTable> monoid_of(const Graph& g, MonoidFlavor flavor, const CompareBounds& bounds,
                                     std::string& reason) {
  if (flavor == MonoidFlavor::sandpile) {
    if (!is_sandpile_graph(g)) throw DomainError("sandpile flavor requires sandpile graphs");
    try {
      return sandpile_monoid(g, bounds.enumerate.max_elements, bounds.firing_budget);
    } catch (const DomainError& e) {
      reason = e.what();
      return std::nullopt;
    }
  }
  auto r = enumerate_monoid(graph_monoid_presentation(g, false, false), bounds.enumerate);
  if (!r.table) reason = r.reason;
  return r.table;
}

CompareVerdict compare_plain(const Graph& e, const Graph& f, MonoidFlavor flavor, const CompareBounds& bounds) {
  CompareVerdict v;
  std::string reason_e, reason_f;
  auto te = monoid_of(e, flavor, bounds, reason_e);
  auto tf = monoid_of(f, flavor, bounds, reason_f);
  if (!te || !tf) {
    v.reason = !te ? "first monoid: " + reason_e : "second monoid: " + reason_f;
    return v;
  }
  v.table_e = te;
  v.table_f = tf;
  if (te->size() != tf->size()) {
    v.kind = CompareKind::not_iso;
    v.invariant = "size";
    return v;
  }
  const std::size_t unit_e = table_order_unit(*te), unit_f = table_order_unit(*tf);
  const std::size_t k = te->generator_images.size(), n = tf->size();
  std::vector<std::size_t> images(k, 0);
  std::size_t tried = 0;
  while (true) {
    if (++tried > bounds.max_assignments) {
      v.reason = "isomorphism search exceeded " + std::to_string(bounds.max_assignments) + " assignments";
      return v;
    }
    if (is_unit_preserving_iso(*te, unit_e, *tf, unit_f, images)) {
      v.kind = CompareKind::iso_witness_found;
      v.generator_images = images;
      return v;
    }
    std::size_t i = k;
    while (i-- > 0) {
      if (++images[i] < n) break;
      images[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  v.kind = CompareKind::not_iso;
  v.invariant = "order_unit_isomorphism";
  return v;
}

CompareVerdict compare_graded(const Graph& e, const Graph& f, const CompareBounds& bounds) {
  CompareVerdict v;
  const IntMatrix a = adjacency_matrix(e), b = adjacency_matrix(f);
  auto r = se_search(a, b, bounds.se);
  if (r.obstruction) {
    v.kind = CompareKind::not_iso;
    std::string names;
    for (const auto& m : r.obstruction->mismatches) names += (names.empty() ? "" : ",") + m;
    v.invariant = names;
    v.invariants = std::move(r.obstruction);
    return v;
  }
  v.invariants = invariants_report(a, b);
  if (r.witness && verify_se(a, b, *r.witness)) {
    v.kind = CompareKind::iso_witness_found;
    v.se_witness = std::move(r.witness);
    return v;
  }
  v.reason = "no shift-equivalence witness with lag <= " + std::to_string(bounds.se.max_lag) +
             " and coefficients within " + std::to_string(bounds.se.coeff_bound);
  return v;
}

}  // namespace

CompareVerdict kp_compare(const Graph& e, const Graph& f, CompareMode mode, MonoidFlavor flavor,
                          const CompareBounds& bounds) {
  if (mode == CompareMode::graded) return compare_graded(e, f, bounds);
  const bool same_weights = [&] {
    if (e.vertex_count() != f.vertex_count()) return false;
    for (VertexId v = 0; v < e.vertex_count(); ++v)
      if (e.weight(v) != f.weight(v)) return false;
    return true;
  }();
  if (same_weights && adjacency_matrix(e) == adjacency_matrix(f)) {
    if (flavor == MonoidFlavor::sandpile && !is_sandpile_graph(e))
      throw DomainError("sandpile flavor requires sandpile graphs");
    CompareVerdict v;
    v.kind = CompareKind::iso_witness_found;
    v.identity = true;
    return v;
  }
  return compare_plain(e, f, flavor, bounds);
}

}  // namespace monodyn
