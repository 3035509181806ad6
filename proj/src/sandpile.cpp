#include "monodyn/sandpile.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "monodyn/error.hpp"

namespace monodyn {

std::uint64_t ChipConfig::total() const {
  std::uint64_t t = 0;
  for (auto x : counts) t += x;
  return t;
}

std::uint64_t Odometer::total() const {
  std::uint64_t t = 0;
  for (auto x : firings) t += x;
  return t;
}

ChipConfig zero_config(const Graph& g) { return ChipConfig{std::vector<std::uint64_t>(g.vertex_count(), 0), 0}; }

void validate_config(const Graph& g, const ChipConfig& c) {
  if (c.counts.size() != g.vertex_count())
    throw DomainError("configuration has " + std::to_string(c.counts.size()) + " entries for " +
                      std::to_string(g.vertex_count()) + " vertices");
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.is_sink(v) && c.counts[v] != 0) throw DomainError("sink '" + g.name(v) + "' cannot hold chips");
}

bool is_stable_at(const Graph& g, const ChipConfig& c, VertexId v) {
  return g.is_sink(v) || c.counts[v] < g.outdegree(v);
}

bool is_stable(const Graph& g, const ChipConfig& c) {
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!is_stable_at(g, c, v)) return false;
  return true;
}

ChipConfig parse_config(const Graph& g, std::string_view text) {
  ChipConfig c = zero_config(g);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<bool> seen(g.vertex_count(), false);
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;
    if (words.size() != 2) throw ParseError(lineno, "expected '<vertex> <count>'");
    auto v = g.find(words[0]);
    if (!v) throw ParseError(lineno, "unknown vertex '" + words[0] + "'");
    if (seen[*v]) throw ParseError(lineno, "vertex '" + words[0] + "' listed twice");
    seen[*v] = true;
    const std::string& n = words[1];
    if (n.empty() || !std::all_of(n.begin(), n.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      throw ParseError(lineno, "invalid chip count '" + n + "'");
    std::uint64_t count;
    try {
      count = std::stoull(n);
    } catch (const std::out_of_range&) {
      throw ParseError(lineno, "chip count out of range '" + n + "'");
    }
    if (g.is_sink(*v) && count != 0) throw ParseError(lineno, "sink '" + words[0] + "' cannot hold chips");
    c.counts[*v] = count;
  }
  return c;
}

std::string format_config(const Graph& g, const ChipConfig& c) {
  std::ostringstream out;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (c.counts[v] != 0) out << g.name(v) << ' ' << c.counts[v] << '\n';
  return out.str();
}

namespace {

// Fires v `times` times without checks beyond what the caller guarantees.
void fire_batch(const Graph& g, ChipConfig& c, VertexId v, std::uint64_t times) {
  c.counts[v] -= times * g.outdegree(v);
  for (const auto& a : g.out(v)) {
    if (g.is_sink(a.target))
      c.absorbed += times * a.multiplicity;
    else
      c.counts[a.target] += times * a.multiplicity;
  }
}

}  // namespace

ChipConfig fire(const Graph& g, const ChipConfig& c, VertexId v) {
  validate_config(g, c);
  if (v >= g.vertex_count()) throw DomainError("vertex out of range");
  if (g.is_sink(v)) throw DomainError("cannot fire sink '" + g.name(v) + "'");
  if (c.counts[v] < g.outdegree(v))
    throw DomainError("vertex '" + g.name(v) + "' is stable (" + std::to_string(c.counts[v]) + " < " +
                      std::to_string(g.outdegree(v)) + ")");
  ChipConfig next = c;
  fire_batch(g, next, v, 1);
  return next;
}

StabilizeResult stabilize(const Graph& g, const ChipConfig& c, std::uint64_t budget,
                          const FiringObserver& observer) {
  validate_config(g, c);
  const std::size_t n = g.vertex_count();
  StabilizeResult r{c, Odometer{std::vector<std::uint64_t>(n, 0)}, StabilizeStatus::stable, 0};
  std::vector<std::uint64_t> degree(n);
  for (VertexId v = 0; v < n; ++v) degree[v] = g.outdegree(v);

  std::deque<VertexId> queue;
  std::vector<bool> queued(n, false);
  auto unstable = [&](VertexId v) { return degree[v] > 0 && r.config.counts[v] >= degree[v]; };
  for (VertexId v = 0; v < n; ++v)
    if (unstable(v)) {
      queue.push_back(v);
      queued[v] = true;
    }

  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    queued[v] = false;
    std::uint64_t times = r.config.counts[v] / degree[v];
    if (times == 0) continue;
    if (times > budget - r.firings) {
      times = budget - r.firings;
      if (times == 0) {
        r.status = StabilizeStatus::budget_exceeded;
        return r;
      }
    }
    fire_batch(g, r.config, v, times);
    r.odometer.firings[v] += times;
    r.firings += times;
    if (observer) observer(v, times);
    for (const auto& a : g.out(v)) {
      VertexId u = a.target;
      if (u != v && !queued[u] && unstable(u)) {
        queue.push_back(u);
        queued[u] = true;
      }
    }
    if (unstable(v) && !queued[v]) {
      queue.push_back(v);
      queued[v] = true;
    }
  }
  return r;
}

StabilizeResult stabilize_random(const Graph& g, const ChipConfig& c, std::mt19937_64& rng,
                                 std::uint64_t budget) {
  validate_config(g, c);
  const std::size_t n = g.vertex_count();
  StabilizeResult r{c, Odometer{std::vector<std::uint64_t>(n, 0)}, StabilizeStatus::stable, 0};
  std::vector<std::uint64_t> degree(n);
  for (VertexId v = 0; v < n; ++v) degree[v] = g.outdegree(v);

  constexpr std::size_t absent = std::numeric_limits<std::size_t>::max();
  std::vector<VertexId> pool;
  std::vector<std::size_t> slot(n, absent);
  auto refresh = [&](VertexId v) {
    bool unstable = degree[v] > 0 && r.config.counts[v] >= degree[v];
    if (unstable && slot[v] == absent) {
      slot[v] = pool.size();
      pool.push_back(v);
    } else if (!unstable && slot[v] != absent) {
      VertexId last = pool.back();
      pool[slot[v]] = last;
      slot[last] = slot[v];
      pool.pop_back();
      slot[v] = absent;
    }
  };
  for (VertexId v = 0; v < n; ++v) refresh(v);

  while (!pool.empty()) {
    if (r.firings == budget) {
      r.status = StabilizeStatus::budget_exceeded;
      return r;
    }
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    VertexId v = pool[pick(rng)];
    fire_batch(g, r.config, v, 1);
    ++r.odometer.firings[v];
    ++r.firings;
    refresh(v);
    for (const auto& a : g.out(v)) refresh(a.target);
  }
  return r;
}

ChipConfig stable_add(const Graph& g, const ChipConfig& a, const ChipConfig& b, std::uint64_t budget) {
  validate_config(g, a);
  validate_config(g, b);
  if (!is_stable(g, a) || !is_stable(g, b)) throw DomainError("stable_add expects stable configurations");
  ChipConfig sum = a;
  for (std::size_t i = 0; i < sum.counts.size(); ++i) sum.counts[i] += b.counts[i];
  sum.absorbed += b.absorbed;
  auto r = stabilize(g, sum, budget);
  if (r.status != StabilizeStatus::stable) throw DomainError("did not stabilize within budget");
  return r.config;
}

std::vector<ChipConfig> firing_trace(const Graph& g, const ChipConfig& c, std::uint64_t budget) {
  std::vector<ChipConfig> states{c};
  auto r = stabilize(g, c, budget, [&](VertexId v, std::uint64_t times) {
    for (std::uint64_t k = 0; k < times; ++k) states.push_back(fire(g, states.back(), v));
  });
  if (r.status != StabilizeStatus::stable) throw DomainError("did not stabilize within budget");
  return states;
}

std::vector<std::string> format_trace(const Graph& g, const std::vector<ChipConfig>& states) {
  std::vector<VertexId> order;
  std::vector<bool> placed(g.vertex_count(), false);
  for (const auto& s : states)
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (s.counts[v] > 0 && !placed[v]) {
        placed[v] = true;
        order.push_back(v);
      }
  std::vector<std::string> lines;
  for (const auto& s : states) {
    std::string term;
    for (VertexId v : order) {
      if (s.counts[v] == 0) continue;
      if (!term.empty()) term += '+';
      if (s.counts[v] != 1) term += std::to_string(s.counts[v]);
      term += g.name(v);
    }
    lines.push_back(term.empty() ? "0" : term);
  }
  return lines;
}

MonoidTable sandpile_monoid(const Graph& g, std::size_t max_elements, std::uint64_t budget) {
  if (!is_sandpile_graph(g)) throw DomainError("sandpile monoid requires a sandpile graph");
  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!g.is_sink(v)) free_vertices.push_back(v);

  std::size_t count = 1;
  for (VertexId v : free_vertices) {
    std::uint64_t d = g.outdegree(v);
    if (count > max_elements / d) throw DomainError("sandpile monoid exceeds element cap " + std::to_string(max_elements));
    count *= d;
  }
  if (count > max_elements) throw DomainError("sandpile monoid exceeds element cap " + std::to_string(max_elements));

  // Mixed-radix enumeration, last non-sink vertex varying fastest: this lists the
  // coefficient vectors in lexicographic order.
  std::vector<ChipConfig> configs;
  std::map<std::vector<std::uint64_t>, std::size_t> index;
  MonoidTable t;
  ChipConfig c = zero_config(g);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t rest = k;
    for (std::size_t i = free_vertices.size(); i-- > 0;) {
      VertexId v = free_vertices[i];
      c.counts[v] = rest % g.outdegree(v);
      rest /= g.outdegree(v);
    }
    MonoidElement e;
    for (VertexId v : free_vertices) e.coeffs.push_back(c.counts[v]);
    index.emplace(c.counts, k);
    configs.push_back(c);
    t.elements.push_back(std::move(e));
  }
  t.identity = 0;
  t.addition.assign(count, std::vector<std::size_t>(count));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i; j < count; ++j) {
      ChipConfig s = stable_add(g, configs[i], configs[j], budget);
      std::size_t k = index.at(s.counts);
      t.addition[i][j] = t.addition[j][i] = k;
    }
  for (VertexId v : free_vertices) {
    ChipConfig unit = zero_config(g);
    unit.counts[v] = 1;
    auto r = stabilize(g, unit, budget);
    t.generator_images.push_back(index.at(r.config.counts));
  }
  return t;
}

}  // namespace monodyn
