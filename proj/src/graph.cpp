#include "monodyn/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "monodyn/error.hpp"

namespace monodyn {

VertexId Graph::add_vertex(std::string name) {
  if (name.empty()) throw DomainError("empty vertex name");
  if (index_.count(name)) throw DomainError("duplicate vertex '" + name + "'");
  VertexId id = names_.size();
  index_.emplace(name, id);
  names_.push_back(std::move(name));
  out_.emplace_back();
  weights_.emplace_back();
  return id;
}

void Graph::add_edge(VertexId source, VertexId target, std::uint64_t multiplicity) {
  if (source >= names_.size() || target >= names_.size())
    throw DomainError("edge endpoint out of range");
  if (multiplicity == 0) throw DomainError("edge multiplicity must be at least 1");
  auto& arcs = out_[source];
  auto it = std::lower_bound(arcs.begin(), arcs.end(), target,
                             [](const Arc& a, VertexId t) { return a.target < t; });
  if (it != arcs.end() && it->target == target)
    it->multiplicity += multiplicity;
  else
    arcs.insert(it, Arc{target, multiplicity});
}

void Graph::set_weight(VertexId v, std::uint64_t weight) {
  weights_.at(v) = weight;
  has_weights_ = true;
}

std::optional<VertexId> Graph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Graph::id(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw DomainError("unknown vertex '" + std::string(name) + "'");
}

std::uint64_t Graph::outdegree(VertexId v) const {
  std::uint64_t d = 0;
  for (const auto& a : out_.at(v)) d += a.multiplicity;
  return d;
}

std::uint64_t Graph::multiplicity(VertexId source, VertexId target) const {
  for (const auto& a : out_.at(source))
    if (a.target == target) return a.multiplicity;
  return 0;
}

std::uint64_t Graph::edge_count() const {
  std::uint64_t total = 0;
  for (VertexId v = 0; v < names_.size(); ++v) total += outdegree(v);
  return total;
}

std::vector<VertexId> Graph::sinks() const {
  std::vector<VertexId> s;
  for (VertexId v = 0; v < names_.size(); ++v)
    if (out_[v].empty()) s.push_back(v);
  return s;
}

std::uint64_t Graph::weight(VertexId v) const {
  if (has_weights_ && weights_.at(v)) return *weights_[v];
  return outdegree(v);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t parse_count(const std::string& word, std::size_t lineno, const char* what) {
  if (word.empty() || !std::all_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(lineno, std::string("invalid ") + what + " '" + word + "'");
  try {
    return std::stoull(word);
  } catch (const std::out_of_range&) {
    throw ParseError(lineno, std::string(what) + " out of range: '" + word + "'");
  }
}

}  // namespace

Graph parse_graph(std::string_view text) {
  Graph g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<bool> weighted;
  auto vertex = [&](const std::string& name) {
    auto v = g.find(name);
    if (!v) throw ParseError(lineno, "undeclared vertex '" + name + "'");
    return *v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<std::string> words;
    for (std::string w; tokens >> w;) words.push_back(w);
    if (words.empty()) continue;
    const std::string& kind = words[0];
    if (kind == "v") {
      if (words.size() != 2) throw ParseError(lineno, "expected 'v <name>'");
      if (g.find(words[1])) throw ParseError(lineno, "duplicate vertex '" + words[1] + "'");
      g.add_vertex(words[1]);
      weighted.push_back(false);
    } else if (kind == "e") {
      if (words.size() != 3 && words.size() != 4)
        throw ParseError(lineno, "expected 'e <src> <dst> [mult]'");
      VertexId s = vertex(words[1]);
      VertexId t = vertex(words[2]);
      std::uint64_t mult = words.size() == 4 ? parse_count(words[3], lineno, "multiplicity") : 1;
      if (mult == 0) throw ParseError(lineno, "edge multiplicity must be at least 1");
      g.add_edge(s, t, mult);
    } else if (kind == "w") {
      if (words.size() != 3) throw ParseError(lineno, "expected 'w <name> <int>'");
      VertexId v = vertex(words[1]);
      g.set_weight(v, parse_count(words[2], lineno, "weight"));
      weighted[v] = true;
    } else {
      throw ParseError(lineno, "unknown directive '" + kind + "'");
    }
  }
  if (g.has_weights()) {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (!weighted[v]) throw ParseError(0, "weights given but missing for vertex '" + g.name(v) + "'");
  }
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out << "v " << g.name(v) << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (const auto& a : g.out(v)) {
      out << "e " << g.name(v) << ' ' << g.name(a.target);
      if (a.multiplicity != 1) out << ' ' << a.multiplicity;
      out << '\n';
    }
  if (g.has_weights())
    for (VertexId v = 0; v < g.vertex_count(); ++v) out << "w " << g.name(v) << ' ' << g.weight(v) << '\n';
  return out.str();
}

IntMatrix adjacency_matrix(const Graph& g) {
  const std::size_t n = g.vertex_count();
  IntMatrix a(n, n);
  for (VertexId v = 0; v < n; ++v)
    for (const auto& arc : g.out(v)) a(v, arc.target) = static_cast<unsigned long>(arc.multiplicity);
  return a;
}

Graph graph_from_matrix(const IntMatrix& a) {
  if (!a.is_square())
    throw DomainError("adjacency matrix must be square, got " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()));
  Graph g;
  for (std::size_t i = 0; i < a.rows(); ++i) g.add_vertex("v" + std::to_string(i + 1));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (sgn(x) < 0)
        throw DomainError("negative entry at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      if (!x.fits_ulong_p())
        throw DomainError("entry too large at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      if (x != 0) g.add_edge(i, j, x.get_ui());
    }
  return g;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<VertexId>> strongly_connected_components(const Graph& g) {
  // Iterative Tarjan.
  const std::size_t n = g.vertex_count();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> components;
  std::size_t counter = 0;

  struct Frame {
    VertexId v;
    std::size_t next_arc;
  };
  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      auto arcs = g.out(f.v);
      if (f.next_arc < arcs.size()) {
        VertexId w = arcs[f.next_arc++].target;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      VertexId v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<VertexId> comp;
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

std::vector<bool> reachable_from(const Graph& g, VertexId start) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<VertexId> queue{start};
  seen.at(start) = true;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const auto& a : g.out(v))
      if (!seen[a.target]) {
        seen[a.target] = true;
        queue.push_back(a.target);
      }
  }
  return seen;
}

std::vector<bool> reaching(const Graph& g, VertexId target) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<VertexId>> in(n);
  for (VertexId v = 0; v < n; ++v)
    for (const auto& a : g.out(v)) in[a.target].push_back(v);
  std::vector<bool> seen(n, false);
  std::deque<VertexId> queue{target};
  seen.at(target) = true;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (VertexId u : in[v])
      if (!seen[u]) {
        seen[u] = true;
        queue.push_back(u);
      }
  }
  return seen;
}

StructureReport structure_report(const Graph& g) {
  StructureReport r;
  const std::size_t n = g.vertex_count();
  r.sinks = g.sinks();
  r.scc_partition = strongly_connected_components(g);
  r.strongly_connected = r.scc_partition.size() <= 1;
  r.outdegrees.resize(n);
  r.indegrees.assign(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    r.outdegrees[v] = g.outdegree(v);
    for (const auto& a : g.out(v)) r.indegrees[a.target] += a.multiplicity;
  }
  if (r.sinks.size() == 1) {
    auto back = reaching(g, r.sinks.front());
    r.sandpile = std::all_of(back.begin(), back.end(), [](bool b) { return b; });
    if (r.sandpile) r.unique_sink = r.sinks.front();
  }
  return r;
}

bool is_sandpile_graph(const Graph& g) { return structure_report(g).sandpile; }

CycleExitResult every_cycle_has_exit(const Graph& g) {
  // A cycle lacks an exit iff every vertex on it has total outdegree 1, so the
  // exit-less cycles are exactly the cycles of the functional subgraph formed by
  // the outdegree-1 vertices.
  const std::size_t n = g.vertex_count();
  std::vector<std::optional<VertexId>> next(n);
  for (VertexId v = 0; v < n; ++v)
    if (g.outdegree(v) == 1) next[v] = g.out(v).front().target;

  enum : char { white, grey, black };
  std::vector<char> colour(n, white);
  for (VertexId start = 0; start < n; ++start) {
    if (colour[start] != white) continue;
    std::vector<VertexId> walk;
    VertexId v = start;
    while (true) {
      colour[v] = grey;
      walk.push_back(v);
      if (!next[v] || colour[*next[v]] == black) break;
      VertexId w = *next[v];
      if (colour[w] == grey) {
        auto first = std::find(walk.begin(), walk.end(), w);
        return {false, std::vector<VertexId>(first, walk.end())};
      }
      v = w;
    }
    for (VertexId u : walk) colour[u] = black;
  }
  return {};
}

bool is_cyclic_component(const Graph& g, std::span<const VertexId> component) {
  if (component.size() > 1) return true;
  return !component.empty() && g.loops(component.front()) > 0;
}

std::vector<VertexId> cycle_in_component(const Graph& g, std::span<const VertexId> component) {
  if (component.empty()) return {};
  const VertexId start = component.front();
  if (g.loops(start) > 0) return {start};
  std::vector<bool> member(g.vertex_count(), false);
  for (VertexId v : component) member[v] = true;
  // Shortest path start -> ... -> start inside the component.
  std::vector<std::optional<VertexId>> parent(g.vertex_count());
  std::deque<VertexId> queue{start};
  std::vector<bool> seen(g.vertex_count(), false);
  seen[start] = true;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const auto& a : g.out(v)) {
      if (!member[a.target]) continue;
      if (a.target == start) {
        std::vector<VertexId> cycle{v};
        while (parent[cycle.back()]) cycle.push_back(*parent[cycle.back()]);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;
      }
      if (!seen[a.target]) {
        seen[a.target] = true;
        parent[a.target] = v;
        queue.push_back(a.target);
      }
    }
  }
  return {};
}

}  // namespace monodyn
