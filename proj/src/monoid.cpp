#include "monodyn/monoid.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "monodyn/error.hpp"

namespace monodyn {

bool MonoidElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::uint64_t c) { return c == 0; });
}

bool MonoidElement::contains(const MonoidElement& y) const {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] < y.coeffs[i]) return false;
  return true;
}

MonoidElement operator+(const MonoidElement& x, const MonoidElement& y) {
  if (x.size() != y.size()) throw DomainError("adding elements of different length");
  MonoidElement z = x;
  for (std::size_t i = 0; i < z.coeffs.size(); ++i) z.coeffs[i] += y.coeffs[i];
  return z;
}

MonoidElement MonoidPresentation::unit(std::size_t g) const {
  MonoidElement e = zero();
  e.coeffs.at(g) = 1;
  return e;
}

void MonoidPresentation::validate() const {
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const auto& r = relations[k];
    if (r.lhs.size() != rank() || r.rhs.size() != rank())
      throw DomainError("relation " + std::to_string(k + 1) + " has the wrong length");
    if (r.lhs == r.rhs) throw DomainError("relation " + std::to_string(k + 1) + " is trivial");
  }
}

// ---------------------------------------------------------------------------

MonoidPresentation graph_monoid_presentation(const Graph& g, bool weighted, bool sink_zero) {
  std::optional<VertexId> sink;
  if (sink_zero) {
    auto report = structure_report(g);
    if (!report.sandpile) throw DomainError("sink-zero presentation requires a sandpile graph");
    sink = report.unique_sink;
  }
  MonoidPresentation p;
  p.origin = PresentationOrigin::graph;
  std::vector<std::size_t> slot(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (sink && *sink == v) continue;
    slot[v] = p.generators.size();
    p.generators.push_back(g.name(v));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.is_sink(v)) continue;
    MonoidRelation r{p.zero(), p.zero()};
    r.lhs.coeffs[slot[v]] = weighted ? g.weight(v) : 1;
    for (const auto& a : g.out(v)) {
      if (sink && *sink == a.target) continue;
      r.rhs.coeffs[slot[a.target]] += a.multiplicity;
    }
    // A vertex whose only edge is a loop (unweighted) gives v = v; it carries no
    // information and is dropped.
    if (r.lhs != r.rhs) p.relations.push_back(std::move(r));
  }
  return p;
}

MonoidElement order_unit(const MonoidPresentation& p) {
  if (p.origin != PresentationOrigin::graph) throw DomainError("order unit is defined for graph presentations");
  return MonoidElement{std::vector<std::uint64_t>(p.rank(), 1)};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

std::optional<MonoidElement> apply_rewrite(const MonoidPresentation& p, const MonoidElement& x,
                                           std::size_t relation, bool forward) {
  const auto& r = p.relations.at(relation);
  const MonoidElement& from = forward ? r.lhs : r.rhs;
  const MonoidElement& to = forward ? r.rhs : r.lhs;
  if (!x.contains(from)) return std::nullopt;
  MonoidElement y = x;
  for (std::size_t i = 0; i < y.coeffs.size(); ++i) y.coeffs[i] = y.coeffs[i] - from.coeffs[i] + to.coeffs[i];
  return y;
}

bool replay_path(const MonoidPresentation& p, const MonoidElement& x, const MonoidElement& y,
                 const std::vector<RewriteStep>& path) {
  MonoidElement cur = x;
  for (const auto& step : path) {
    if (step.relation >= p.relations.size()) return false;
    auto next = apply_rewrite(p, cur, step.relation, step.forward);
    if (!next || *next != step.result) return false;
    cur = std::move(*next);
  }
  return cur == y;
}

namespace {

struct ElementHash {
  std::size_t operator()(const MonoidElement& e) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto c : e.coeffs) h = (h ^ (c + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2))) * 0x100000001b3ull;
    return h;
  }
};

constexpr std::size_t no_parent = static_cast<std::size_t>(-1);

// Breadth-first exploration of one congruence class.
struct ClassSearch {
  struct Node {
    MonoidElement value;
    std::size_t parent;
    std::size_t relation;
    bool forward;
  };
  std::vector<Node> nodes;
  std::unordered_map<MonoidElement, std::size_t, ElementHash> index;
  std::size_t layer_begin = 0;
  std::size_t layers = 0;
  bool exhausted = false;

  explicit ClassSearch(const MonoidElement& root) {
    nodes.push_back({root, no_parent, 0, true});
    index.emplace(root, 0);
  }

  std::size_t frontier_size() const { return nodes.size() - layer_begin; }

  // Expands one layer; `on_new` sees each new node index and may return true to stop.
  template <class OnNew>
  bool expand(const MonoidPresentation& p, std::size_t max_states, std::size_t& budget_used, OnNew on_new) {
    const std::size_t begin = layer_begin, end = nodes.size();
    for (std::size_t k = begin; k < end; ++k)
      for (std::size_t r = 0; r < p.relations.size(); ++r)
        for (bool fwd : {true, false}) {
          auto next = apply_rewrite(p, nodes[k].value, r, fwd);
          if (!next || index.count(*next)) continue;
          if (budget_used >= max_states) return false;
          ++budget_used;
          index.emplace(*next, nodes.size());
          nodes.push_back({std::move(*next), k, r, fwd});
          if (on_new(nodes.size() - 1)) {
            layer_begin = end;
            ++layers;
            return true;
          }
        }
    layer_begin = end;
    ++layers;
    if (nodes.size() == end) exhausted = true;
    return true;
  }

  // Steps root -> node.
  std::vector<RewriteStep> path_to(std::size_t k) const {
    std::vector<RewriteStep> steps;
    for (; nodes[k].parent != no_parent; k = nodes[k].parent)
      steps.push_back({nodes[k].relation, nodes[k].forward, nodes[k].value});
    std::reverse(steps.begin(), steps.end());
    return steps;
  }

  // Steps node -> root.
  std::vector<RewriteStep> path_from(std::size_t k) const {
    std::vector<RewriteStep> steps;
    for (; nodes[k].parent != no_parent; k = nodes[k].parent)
      steps.push_back({nodes[k].relation, !nodes[k].forward, nodes[nodes[k].parent].value});
    return steps;
  }
};

}  // namespace

WordProblemResult words_equal(const MonoidPresentation& p, const MonoidElement& x, const MonoidElement& y,
                              const WordBounds& bounds) {
  p.validate();
  if (x.size() != p.rank() || y.size() != p.rank()) throw DomainError("element length does not match presentation");
  WordProblemResult result;
  if (x == y) {
    result.verdict = Verdict::yes;
    result.states_visited = 1;
    return result;
  }
  ClassSearch left(x), right(y);
  std::size_t used = 2;
  std::optional<std::pair<std::size_t, std::size_t>> meet;

  while (left.layers + right.layers < bounds.depth) {
    const bool expand_left = left.frontier_size() <= right.frontier_size();
    ClassSearch& side = expand_left ? left : right;
    ClassSearch& other = expand_left ? right : left;
    bool ok = side.expand(p, bounds.max_states, used, [&](std::size_t k) {
      auto it = other.index.find(side.nodes[k].value);
      if (it == other.index.end()) return false;
      meet = expand_left ? std::make_pair(k, it->second) : std::make_pair(it->second, k);
      return true;
    });
    if (meet) {
      result.verdict = Verdict::yes;
      result.path = left.path_to(meet->first);
      auto tail = right.path_from(meet->second);
      result.path.insert(result.path.end(), tail.begin(), tail.end());
      result.states_visited = used;
      return result;
    }
    if (!ok) {
      result.states_visited = used;
      result.reason = "state cap " + std::to_string(bounds.max_states) + " reached";
      return result;
    }
    if (side.exhausted) {
      result.verdict = Verdict::no;
      result.states_visited = used;
      result.reason = std::string("congruence class of ") + (expand_left ? "x" : "y") + " exhausted (" +
                      std::to_string(side.nodes.size()) + " elements)";
      return result;
    }
  }
  result.states_visited = used;
  result.reason = "depth bound " + std::to_string(bounds.depth) + " reached";
  return result;
}

// ---------------------------------------------------------------------------

std::size_t evaluate(const MonoidTable& t, const MonoidElement& x) {
  if (x.size() != t.generator_images.size()) throw DomainError("element length does not match table generators");
  std::size_t cur = t.identity;
  for (std::size_t g = 0; g < x.size(); ++g)
    for (std::uint64_t k = 0; k < x.coeffs[g]; ++k) cur = t.addition[cur][t.generator_images[g]];
  return cur;
}

bool satisfies_monoid_laws(const MonoidTable& t) {
  const std::size_t n = t.size();
  if (t.addition.size() != n || t.identity >= n) return false;
  for (const auto& row : t.addition) {
    if (row.size() != n) return false;
    for (auto x : row)
      if (x >= n) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.addition[t.identity][i] != i || t.addition[i][t.identity] != i) return false;
    for (std::size_t j = 0; j < n; ++j)
      if (t.addition[i][j] != t.addition[j][i]) return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t ij = t.addition[i][j];
      for (std::size_t k = 0; k < n; ++k)
        if (t.addition[ij][k] != t.addition[i][t.addition[j][k]]) return false;
    }
  return true;
}

MonoidTable canonical_relabel(const MonoidTable& t) {
  const std::size_t n = t.size();
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, unseen);
  std::vector<std::size_t> order{t.identity};
  label[t.identity] = 0;
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t g : t.generator_images) {
      std::size_t next = t.addition[order[k]][g];
      if (label[next] == unseen) {
        label[next] = order.size();
        order.push_back(next);
      }
    }
  if (order.size() != n) throw DomainError("table is not generated by its generator images");
  MonoidTable c;
  c.identity = 0;
  c.elements.reserve(n);
  for (std::size_t old : order) c.elements.push_back(t.elements[old]);
  c.addition.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.addition[label[i]][label[j]] = label[t.addition[i][j]];
  for (std::size_t g : t.generator_images) c.generator_images.push_back(label[g]);
  return c;
}

bool same_canonical_table(const MonoidTable& a, const MonoidTable& b) {
  if (a.size() != b.size() || a.generator_images.size() != b.generator_images.size()) return false;
  MonoidTable ca = canonical_relabel(a), cb = canonical_relabel(b);
  return ca.addition == cb.addition && ca.generator_images == cb.generator_images;
}

EnumerateResult enumerate_monoid(const MonoidPresentation& p, const EnumerateBounds& bounds) {
  p.validate();
  EnumerateResult out;
  const std::size_t rank = p.rank();

  // Every vector discovered so far, mapped to its class. Membership is always
  // backed by an explicit rewrite path to the class's first vector.
  std::unordered_map<MonoidElement, std::size_t, ElementHash> known;
  std::vector<MonoidElement> first;  // discovery vector per class
  std::vector<std::vector<std::size_t>> step;  // class + generator -> class

  auto discover = [&](const MonoidElement& w) -> std::optional<std::size_t> {
    if (auto it = known.find(w); it != known.end()) return it->second;
    ClassSearch ball(w);
    std::size_t used = 1;
    std::optional<std::size_t> hit;
    while (!hit && !ball.exhausted && ball.layers < bounds.depth) {
      bool ok = ball.expand(p, bounds.max_states, used, [&](std::size_t k) {
        if (auto it = known.find(ball.nodes[k].value); it != known.end()) {
          hit = it->second;
          return true;
        }
        return false;
      });
      if (!ok) break;
    }
    std::size_t cls;
    if (hit) {
      cls = *hit;
    } else {
      cls = first.size();
      first.push_back(w);
      step.emplace_back(rank, 0);
      if (!ball.exhausted) ++out.hypothesised_distinct;
    }
    for (const auto& node : ball.nodes) known.emplace(node.value, cls);
    return cls;
  };

  discover(p.zero());
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t g = 0; g < rank; ++g) {
      MonoidElement w = first[i] + p.unit(g);
      step[i][g] = *discover(w);
      if (first.size() > bounds.max_elements) {
        out.elements_found = first.size();
        out.reason = "element cap " + std::to_string(bounds.max_elements) + " exceeded";
        return out;
      }
    }
  }
  const std::size_t n = first.size();
  out.elements_found = n;

  MonoidTable t;
  t.identity = 0;
  t.elements = first;
  for (std::size_t g = 0; g < rank; ++g) t.generator_images.push_back(step[0][g]);
  t.addition.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t cur = i;
      for (std::size_t g = 0; g < rank; ++g)
        for (std::uint64_t k = 0; k < first[j].coeffs[g]; ++k) cur = step[cur][g];
      t.addition[i][j] = cur;
    }

  // Model check: the table must be a commutative monoid in which every relation
  // holds under the generator images. Then class -> table entry is a well-defined
  // homomorphism, so classes the search could not merge are genuinely distinct.
  bool model = satisfies_monoid_laws(t);
  for (std::size_t i = 0; model && i < n; ++i)
    for (std::size_t g = 0; model && g < rank; ++g) model = t.addition[i][t.generator_images[g]] == step[i][g];
  for (const auto& r : p.relations) {
    if (!model) break;
    model = evaluate(t, r.lhs) == evaluate(t, r.rhs);
  }
  if (!model) {
    out.reason = "closure reached but " + std::to_string(out.hypothesised_distinct) +
                 " unresolved separations failed the model check";
    return out;
  }

  // Canonical representative: lexicographically least discovered vector.
  for (const auto& [vec, cls] : known)
    if (vec < t.elements[cls]) t.elements[cls] = vec;
  out.table = std::move(t);
  return out;
}

// ---------------------------------------------------------------------------

std::string format_element(const MonoidPresentation& p, const MonoidElement& x) {
  if (x.size() != p.rank()) throw DomainError("element length does not match presentation");
  std::string s;
  for (std::size_t g = 0; g < p.rank(); ++g) {
    std::uint64_t c = x.coeffs[g];
    if (c == 0) continue;
    if (!s.empty()) s += '+';
    const std::string& name = p.generators[g];
    const bool digit_lead = !name.empty() && name[0] >= '0' && name[0] <= '9';
    if (c != 1) s += std::to_string(c) + (digit_lead ? "*" : "");
    s += name;
  }
  return s.empty() ? "0" : s;
}

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<std::size_t> generator_index(const MonoidPresentation& p, std::string_view name) {
  auto it = std::find(p.generators.begin(), p.generators.end(), name);
  if (it == p.generators.end()) return std::nullopt;
  return static_cast<std::size_t>(it - p.generators.begin());
}

}  // namespace

MonoidElement parse_element(const MonoidPresentation& p, std::string_view text) {
  MonoidElement x = p.zero();
  std::string s(text);
  std::size_t start = 0;
  bool any = false;
  while (start <= s.size()) {
    std::size_t plus = s.find('+', start);
    std::string term = trim(std::string_view(s).substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    start = plus == std::string::npos ? s.size() + 1 : plus + 1;
    if (term.empty()) throw DomainError("empty term in '" + std::string(text) + "'");
    any = true;
    if (auto g = generator_index(p, term)) {
      x.coeffs[*g] += 1;
      continue;
    }
    std::string coef, name;
    if (auto star = term.find('*'); star != std::string::npos) {
      coef = trim(std::string_view(term).substr(0, star));
      name = trim(std::string_view(term).substr(star + 1));
    } else {
      std::size_t k = 0;
      while (k < term.size() && term[k] >= '0' && term[k] <= '9') ++k;
      coef = term.substr(0, k);
      name = trim(std::string_view(term).substr(k));
    }
    if (coef.empty() || !std::all_of(coef.begin(), coef.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw DomainError("invalid term '" + term + "'");
    std::uint64_t c = std::stoull(coef);
    if (name.empty()) {
      if (c != 0) throw DomainError("bare integer term '" + term + "'");
      continue;
    }
    auto g = generator_index(p, name);
    if (!g) throw DomainError("unknown generator '" + name + "'");
    x.coeffs[*g] += c;
  }
  if (!any) throw DomainError("empty element");
  return x;
}

std::string format_presentation(const MonoidPresentation& p) {
  std::string s = "gens:";
  for (const auto& g : p.generators) s += " " + g;
  s += '\n';
  for (const auto& r : p.relations) s += format_element(p, r.lhs) + " = " + format_element(p, r.rhs) + "\n";
  return s;
}

MonoidPresentation parse_presentation(std::string_view text) {
  MonoidPresentation p;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_gens = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    if (!have_gens) {
      if (t.rfind("gens:", 0) != 0) throw ParseError(lineno, "expected 'gens: ...' header");
      std::istringstream names(t.substr(5));
      for (std::string n; names >> n;) {
        if (generator_index(p, n)) throw ParseError(lineno, "duplicate generator '" + n + "'");
        p.generators.push_back(n);
      }
      have_gens = true;
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos || t.find('=', eq + 1) != std::string::npos)
      throw ParseError(lineno, "expected 'lhs = rhs'");
    try {
      MonoidRelation r{parse_element(p, t.substr(0, eq)), parse_element(p, t.substr(eq + 1))};
      if (r.lhs == r.rhs) throw ParseError(lineno, "relation equates an element with itself");
      p.relations.push_back(std::move(r));
    } catch (const DomainError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!have_gens) throw ParseError(0, "missing 'gens:' header");
  return p;
}

}  // namespace monodyn
