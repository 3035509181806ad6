#include "monodyn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "monodyn/bounds.hpp"
#include "monodyn/dimension.hpp"
#include "monodyn/error.hpp"
#include "monodyn/grid.hpp"
#include "monodyn/lpa.hpp"
#include "monodyn/sandpile.hpp"
#include "monodyn/shifteq.hpp"
#include "monodyn/smith.hpp"

namespace monodyn {

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_binary(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
    throw DomainError("cannot write '" + path + "'");
}

std::string first_content_line(std::string_view text) {
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  return {};
}

/// Matrix files open with a "<rows> <cols>" line; graph files with a keyword.
bool looks_like_matrix(std::string_view text) {
  std::istringstream in(first_content_line(text));
  std::string tok;
  std::size_t n = 0;
  while (in >> tok) {
    if (tok.find_first_not_of("0123456789") != std::string::npos) return false;
    ++n;
  }
  return n == 2;
}

Graph load_graph(const std::string& path) {
  const std::string text = read_text(path);
  return looks_like_matrix(text) ? graph_from_matrix(parse_matrix(text)) : parse_graph(text);
}

IntMatrix load_matrix(const std::string& path) {
  const std::string text = read_text(path);
  return looks_like_matrix(text) ? parse_matrix(text) : adjacency_matrix(parse_graph(text));
}

MonoidPresentation load_presentation(const std::string& path, bool weighted, bool sink_zero) {
  const std::string text = read_text(path);
  const std::string head = first_content_line(text);
  if (head.find("gens:") != std::string::npos) return parse_presentation(text);
  const Graph g = looks_like_matrix(text) ? graph_from_matrix(parse_matrix(text)) : parse_graph(text);
  return graph_monoid_presentation(g, weighted, sink_zero);
}

std::string dashed(std::string s) {
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

CommandResult report(Json j, bool affirmative) {
  CommandResult r;
  r.exit_code = affirmative ? 0 : 1;
  r.out = j.dump(2) + "\n";
  r.report = std::move(j);
  return r;
}

struct Context {
  Bounds bounds;
  bool json = false;
  std::optional<std::uint64_t> seed;
};

// --- graph -----------------------------------------------------------------

CommandResult graph_check(const std::string& path) {
  const Graph g = load_graph(path);
  Json j{{"kind", "structure"}};
  j.update(structure_json(g));
  return report(std::move(j), true);
}

CommandResult graph_matrix(const std::string& path) {
  const Graph g = load_graph(path);
  return report(Json{{"kind", "matrix"}, {"vertices", g.names()}, {"matrix", matrix_json(adjacency_matrix(g))}},
                true);
}

// --- sandpile --------------------------------------------------------------

struct StabilizeArgs {
  std::string graph, config;
  bool trace = false;
  bool random = false;
};

CommandResult sandpile_stabilize(const Context& ctx, const StabilizeArgs& a) {
  const Graph g = load_graph(a.graph);
  const ChipConfig c = parse_config(g, read_text(a.config));
  StabilizeResult res;
  if (a.random) {
    std::mt19937_64 rng(ctx.seed.value_or(0));
    res = stabilize_random(g, c, rng, ctx.bounds.firing_budget);
  } else {
    res = stabilize(g, c, ctx.bounds.firing_budget);
  }
  const bool stable = res.status == StabilizeStatus::stable;
  Json j{{"kind", "stabilize"},
         {"status", stable ? "stable" : "budget_exceeded"},
         {"config", config_json(g, res.config)},
         {"absorbed", res.config.absorbed},
         {"odometer", odometer_json(g, res.odometer)},
         {"firings", res.firings}};
  if (a.random) j["seed"] = ctx.seed.value_or(0);
  std::vector<std::string> trace;
  if (a.trace) {
    if (!stable) throw DomainError("firing budget exceeded; no trace available");
    trace = format_trace(g, firing_trace(g, c, ctx.bounds.firing_budget));
    j["trace"] = trace;
  }
  CommandResult r = report(std::move(j), stable);
  if (a.trace && !ctx.json) {
    std::string line;
    for (std::size_t i = 0; i < trace.size(); ++i) line += (i ? " ⟿ " : "") + trace[i];
    r.out = line + "\n";
  }
  return r;
}

CommandResult sandpile_add(const Context& ctx, const std::string& gp, const std::string& xp, const std::string& yp) {
  const Graph g = load_graph(gp);
  const ChipConfig x = parse_config(g, read_text(xp));
  const ChipConfig y = parse_config(g, read_text(yp));
  const ChipConfig z = stable_add(g, x, y, ctx.bounds.firing_budget);
  return report(Json{{"kind", "stable_add"}, {"config", config_json(g, z)}, {"text", format_config(g, z)}}, true);
}

Json incomplete_table(std::string reason, std::size_t found) {
  return Json{{"kind", "monoid_table"}, {"complete", false}, {"reason", std::move(reason)}, {"elements_found", found}};
}

CommandResult sandpile_monoid_cmd(const Context& ctx, const std::string& gp) {
  const Graph g = load_graph(gp);
  if (!is_sandpile_graph(g)) throw DomainError("sandpile monoid requires a sandpile graph");
  const MonoidPresentation p = graph_monoid_presentation(g, true, true);
  MonoidTable t;
  try {
    t = sandpile_monoid(g, ctx.bounds.monoid_elements, ctx.bounds.firing_budget);
  } catch (const DomainError& e) {
    return report(incomplete_table(e.what(), 0), false);
  }
  Json j{{"kind", "monoid_table"}, {"complete", true}};
  j["table"] = table_json(p, t);
  return report(std::move(j), true);
}

struct GridArgs {
  std::size_t rows = 0, cols = 0;
  std::string mode = "open";
  std::uint64_t center = 0, fill = 0;
  std::vector<std::string> place;
  std::string ppm, palette, config;
  bool stabilize = true;
};

Palette palette_of(const GridArgs& a) { return a.palette.empty() ? Palette{} : parse_palette(a.palette); }

Json grid_json(const GridState& s, StabilizeStatus status) {
  Json counts = Json::array();
  std::uint64_t max_count = 0;
  std::vector<std::uint64_t> histogram;
  for (std::size_t r = 0; r < s.spec.rows; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < s.spec.cols; ++c) {
      const auto x = s.at(r, c);
      row.push_back(x);
      max_count = std::max(max_count, x);
      if (histogram.size() <= x) histogram.resize(x + 1, 0);
      ++histogram[x];
    }
    counts.push_back(std::move(row));
  }
  std::uint64_t firings = 0;
  for (auto f : s.odometer) firings += f;
  return Json{{"kind", "grid"},
              {"rows", s.spec.rows},
              {"cols", s.spec.cols},
              {"mode", std::string(to_string(s.spec.mode))},
              {"status", status == StabilizeStatus::stable ? "stable" : "budget_exceeded"},
              {"firings", firings},
              {"absorbed", s.absorbed},
              {"max_count", max_count},
              {"histogram", histogram},
              {"counts", std::move(counts)}};
}

CommandResult sandpile_grid(const Context& ctx, const GridArgs& a) {
  const GridSpec spec{a.rows, a.cols, parse_grid_mode(a.mode)};
  if (spec.rows == 0 || spec.cols == 0) throw DomainError("grid dimensions must be at least 1");
  GridState s(spec);
  if (a.fill > 0)
    for (std::size_t r = 0; r < spec.rows; ++r)
      for (std::size_t c = 0; c < spec.cols; ++c) s.place(r, c, a.fill);
  if (a.center > 0) s.place(spec.rows / 2, spec.cols / 2, a.center);
  for (const auto& p : a.place) {
    std::istringstream in(p);
    std::size_t r = 0, c = 0;
    std::uint64_t n = 0;
    char comma1 = 0, comma2 = 0;
    if (!(in >> r >> comma1 >> c >> comma2 >> n) || comma1 != ',' || comma2 != ',' || !in.eof())
      throw DomainError("placement must be 'row,col,chips', got '" + p + "'");
    s.place(r, c, n);
  }
  const Palette pal = palette_of(a);
  const StabilizeStatus status = stabilize_grid(s, ctx.bounds.firing_budget);
  Json j = grid_json(s, status);
  if (!a.ppm.empty()) {
    write_binary(a.ppm, render_ppm(spec, s.counts, pal));
    j["ppm"] = a.ppm;
  }
  return report(std::move(j), status == StabilizeStatus::stable);
}

CommandResult sandpile_render(const Context& ctx, const GridArgs& a) {
  const GridSpec spec{a.rows, a.cols, parse_grid_mode(a.mode)};
  const Graph g = make_grid(spec);
  const ChipConfig c = parse_config(g, read_text(a.config));
  GridState s = config_to_grid(spec, c);
  StabilizeStatus status = StabilizeStatus::stable;
  if (a.stabilize) status = stabilize_grid(s, ctx.bounds.firing_budget);
  if (a.ppm.empty()) throw DomainError("render needs an output path (--out)");
  const std::string bytes = render_ppm(spec, s.counts, palette_of(a));
  write_binary(a.ppm, bytes);
  return report(Json{{"kind", "render"},
                     {"path", a.ppm},
                     {"width", spec.cols},
                     {"height", spec.rows},
                     {"bytes", bytes.size()},
                     {"stabilized", a.stabilize},
                     {"status", status == StabilizeStatus::stable ? "stable" : "budget_exceeded"}},
                status == StabilizeStatus::stable);
}

// --- monoid ----------------------------------------------------------------

struct MonoidArgs {
  std::string input, x, y;
  bool weighted = false;
  bool sink_zero = false;
};

CommandResult monoid_present(const MonoidArgs& a) {
  const MonoidPresentation p = load_presentation(a.input, a.weighted, a.sink_zero);
  Json j{{"kind", "presentation"}};
  j.update(presentation_json(p));
  j["text"] = format_presentation(p);
  return report(std::move(j), true);
}

CommandResult monoid_equal(const Context& ctx, const MonoidArgs& a) {
  const MonoidPresentation p = load_presentation(a.input, a.weighted, a.sink_zero);
  const MonoidElement x = parse_element(p, a.x), y = parse_element(p, a.y);
  const WordBounds wb{ctx.bounds.search_depth, ctx.bounds.max_states};
  const WordProblemResult r = words_equal(p, x, y, wb);
  Json j{{"kind", "word_problem"},
         {"x", format_element(p, x)},
         {"y", format_element(p, y)},
         {"verdict", std::string(to_string(r.verdict))},
         {"path", rewrite_path_json(p, r.path)},
         {"states_visited", r.states_visited},
         {"reason", r.reason},
         {"bounds", Json{{"search_depth", wb.depth}, {"max_states", wb.max_states}}}};
  return report(std::move(j), r.verdict == Verdict::yes);
}

CommandResult monoid_enumerate(const Context& ctx, const MonoidArgs& a) {
  const MonoidPresentation p = load_presentation(a.input, a.weighted, a.sink_zero);
  const EnumerateBounds eb{ctx.bounds.monoid_elements, ctx.bounds.search_depth, ctx.bounds.max_states};
  const EnumerateResult r = enumerate_monoid(p, eb);
  if (!r.table) return report(incomplete_table(r.reason, r.elements_found), false);
  Json j{{"kind", "monoid_table"}, {"complete", true}};
  j["table"] = table_json(p, *r.table);
  j["hypothesised_distinct"] = r.hypothesised_distinct;
  return report(std::move(j), true);
}

CommandResult talented_window_cmd(const std::string& gp, int radius) {
  const TalentedWindow w = talented_window(load_graph(gp), radius);
  Json j{{"kind", "talented_window"}, {"radius", radius}};
  j.update(presentation_json(w.presentation));
  return report(std::move(j), true);
}

// --- dimgroup --------------------------------------------------------------

struct DimArgs {
  std::string matrix, x, y, direction = "forward";
  std::string m, n;
};

CommandResult dim_equal_cmd(const Context& ctx, const DimArgs& a) {
  const IntMatrix A = load_matrix(a.matrix);
  const DimElement x = parse_dim_element(A, a.x), y = parse_dim_element(A, a.y);
  const Decision d = dim_equal(x, y, ctx.bounds.max_power);
  return report(Json{{"kind", "dim_equal"},
                     {"x", format_dim_element(x)},
                     {"y", format_dim_element(y)},
                     {"verdict", std::string(to_string(d))},
                     {"max_power", ctx.bounds.max_power}},
                d == Decision::yes);
}

CommandResult dim_positive_cmd(const Context& ctx, const DimArgs& a) {
  const IntMatrix A = load_matrix(a.matrix);
  const DimElement x = parse_dim_element(A, a.x);
  const PositivityResult r = dim_positive(x, ctx.bounds.max_power);
  Json j{{"kind", "dim_positive"},
         {"x", format_dim_element(x)},
         {"verdict", std::string(to_string(r.verdict))},
         {"witness_power", r.witness_power ? Json(*r.witness_power) : Json(nullptr)},
         {"max_power", ctx.bounds.max_power}};
  return report(std::move(j), r.verdict == Positivity::positive);
}

CommandResult dim_shift_cmd(const DimArgs& a) {
  const IntMatrix A = load_matrix(a.matrix);
  ShiftDirection dir;
  if (a.direction == "forward")
    dir = ShiftDirection::forward;
  else if (a.direction == "backward")
    dir = ShiftDirection::backward;
  else
    throw DomainError("direction must be 'forward' or 'backward'");
  const DimElement y = delta_shift(parse_dim_element(A, a.x), dir);
  Json j{{"kind", "dim_element"}, {"direction", a.direction}};
  j["element"] = dim_element_json(y);
  j["normalized"] = dim_element_json(normalize(y, std::min<std::int64_t>(0, y.stage)));
  return report(std::move(j), true);
}

CommandResult dim_fib_cmd(const DimArgs& a) {
  Integer m, n;
  if (m.set_str(a.m, 10) != 0 || n.set_str(a.n, 10) != 0) throw DomainError("fib needs two integers");
  const bool in = fib_cone_member(m, n);
  return report(Json{{"kind", "fib_cone"}, {"m", integer_json(m)}, {"n", integer_json(n)}, {"result", in}}, in);
}

// --- shift -----------------------------------------------------------------

struct ShiftArgs {
  std::string a, b, r, s, chain;
  unsigned lag = 1;
  std::optional<std::size_t> depth, inner;
  std::optional<unsigned> max_lag;
  std::optional<int> coeff_bound;
};

CommandResult shift_verify_es(const ShiftArgs& x) {
  const bool ok = verify_elementary(load_matrix(x.a), load_matrix(x.b), {load_matrix(x.r), load_matrix(x.s)});
  return report(Json{{"kind", "verify"}, {"relation", "elementary"}, {"result", ok}}, ok);
}

CommandResult shift_verify_se(const ShiftArgs& x) {
  const bool ok = verify_se(load_matrix(x.a), load_matrix(x.b), {load_matrix(x.r), load_matrix(x.s), x.lag});
  return report(Json{{"kind", "verify"}, {"relation", "shift"}, {"lag", x.lag}, {"result", ok}}, ok);
}

CommandResult shift_verify_chain(const ShiftArgs& x) {
  Json parsed;
  try {
    parsed = Json::parse(read_text(x.chain));
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("chain file is not valid JSON: ") + e.what());
  }
  const ChainCheck c = verify_sse_chain(json_chain(parsed));
  return report(Json{{"kind", "verify_chain"},
                     {"result", c.valid},
                     {"failing_index", c.failing_index ? Json(*c.failing_index) : Json(nullptr)}},
                c.valid);
}

CommandResult shift_search_sse(const Context& ctx, const ShiftArgs& x) {
  const SSESearchBounds sb{static_cast<unsigned>(x.depth.value_or(ctx.bounds.search_depth)),
                           x.inner.value_or(ctx.bounds.max_inner_dim), ctx.bounds.max_nodes};
  const IntMatrix A = load_matrix(x.a), B = load_matrix(x.b);
  const SSESearchResult r = sse_search(A, B, sb);
  Json j{{"kind", "sse_search"},
         {"found", r.chain.has_value()},
         {"chain", r.chain ? chain_json(*r.chain) : Json(nullptr)},
         {"nodes_explored", r.nodes_explored},
         {"depth_reached", r.depth_reached},
         {"node_cap_hit", r.node_cap_hit},
         {"bounds", Json{{"max_depth", sb.max_depth}, {"max_inner_dim", sb.max_inner_dim}, {"max_nodes", sb.max_nodes}}}};
  return report(std::move(j), r.chain.has_value());
}

CommandResult shift_search_se(const Context& ctx, const ShiftArgs& x) {
  SESearchBounds sb;
  sb.max_lag = x.max_lag.value_or(ctx.bounds.max_lag);
  sb.coeff_bound = x.coeff_bound.value_or(ctx.bounds.coeff_bound);
  const SESearchResult r = se_search(load_matrix(x.a), load_matrix(x.b), sb);
  Json j{{"kind", "se_search"},
         {"found", r.witness.has_value()},
         {"witness", r.witness ? se_witness_json(*r.witness) : Json(nullptr)},
         {"obstruction", r.obstruction ? invariants_json(*r.obstruction) : Json(nullptr)},
         {"r_candidates", r.r_candidates},
         {"s_candidates", r.s_candidates},
         {"combination_cap_hit", r.combination_cap_hit},
         {"bounds", Json{{"max_lag", sb.max_lag}, {"coeff_bound", sb.coeff_bound}}}};
  return report(std::move(j), r.witness.has_value());
}

CommandResult shift_invariants(const ShiftArgs& x) {
  const InvariantReport r = invariants_report(load_matrix(x.a), load_matrix(x.b));
  Json j{{"kind", "invariants"}};
  j.update(invariants_json(r));
  return report(std::move(j), !r.obstruction);
}

// --- lpa -------------------------------------------------------------------

CommandResult lpa_simple_cmd(const std::string& gp) {
  const Graph g = load_graph(gp);
  const SimplicityVerdict v = lpa_simple(g);
  Json j{{"kind", "simplicity"}};
  j.update(simplicity_json(g, v));
  return report(std::move(j), v.simple);
}

CommandResult lpa_zorn_cmd(const std::string& gp) {
  const Graph g = load_graph(gp);
  const CycleExitResult r = every_cycle_has_exit(g);
  Json j{{"kind", "zorn"}, {"result", r.every_cycle_has_exit}};
  if (!r.every_cycle_has_exit) j["exitless_cycle"] = vertex_names_json(g, r.witness);
  return report(std::move(j), r.every_cycle_has_exit);
}

CommandResult lpa_iso_cmd(bool higman_thompson, const std::vector<long>& p) {
  const bool iso = higman_thompson ? higman_thompson_iso(p[0], p[1], p[2], p[3])
                                   : matrix_leavitt_iso(p[0], p[1], p[2], p[3]);
  return report(Json{{"kind", "iso"}, {"result", iso}}, iso);
}

struct CompareArgs {
  std::string e, f, mode = "plain", flavor = "graph";
};

CommandResult lpa_compare_cmd(const Context& ctx, const CompareArgs& a) {
  const Graph e = load_graph(a.e), f = load_graph(a.f);
  const CompareMode mode = parse_compare_mode(a.mode);
  const MonoidFlavor flavor = parse_monoid_flavor(a.flavor);
  CompareBounds cb;
  cb.enumerate = {ctx.bounds.monoid_elements, ctx.bounds.search_depth, ctx.bounds.max_states};
  cb.se.max_lag = ctx.bounds.max_lag;
  cb.se.coeff_bound = ctx.bounds.coeff_bound;
  cb.max_assignments = ctx.bounds.max_assignments;
  cb.firing_budget = ctx.bounds.firing_budget;
  const CompareVerdict v = kp_compare(e, f, mode, flavor, cb);

  Json j{{"kind", "compare"},
         {"mode", std::string(to_string(mode))},
         {"monoid", std::string(to_string(flavor))},
         {"verdict", std::string(to_string(v.kind))}};
  const bool sandpile = flavor == MonoidFlavor::sandpile;
  if (v.kind == CompareKind::iso_witness_found) {
    Json w = Json::object();
    if (v.identity) {
      w["type"] = "identity";
      Json map = Json::object();
      for (VertexId i = 0; i < e.vertex_count(); ++i) map[e.name(i)] = f.name(i);
      w["mapping"] = std::move(map);
    } else if (v.se_witness) {
      w["type"] = "shift_equivalence";
      w.update(se_witness_json(*v.se_witness));
    } else {
      w["type"] = "generator_images";
      const MonoidPresentation pe = graph_monoid_presentation(e, sandpile, sandpile);
      const MonoidPresentation pf = graph_monoid_presentation(f, sandpile, sandpile);
      Json map = Json::object();
      for (std::size_t g = 0; g < v.generator_images.size(); ++g)
        map[pe.generators[g]] = format_element(pf, v.table_f->elements[v.generator_images[g]]);
      w["mapping"] = std::move(map);
    }
    j["witness"] = std::move(w);
  }
  if (v.kind == CompareKind::not_iso) j["invariant"] = v.invariant;
  if (v.table_e && v.table_f) j["sizes"] = Json::array({v.table_e->size(), v.table_f->size()});
  if (v.invariants) j["invariants"] = invariants_json(*v.invariants);
  if (v.kind == CompareKind::unknown) j["reason"] = v.reason;
  return report(std::move(j), v.kind == CompareKind::iso_witness_found);
}

CommandResult runtime_error(const std::string& message) {
  CommandResult r;
  r.exit_code = 3;
  Json j{{"kind", "error"}, {"message", message}};
  r.out = j.dump(2) + "\n";
  r.err = "error: " + message + "\n";
  r.report = std::move(j);
  return r;
}

}  // namespace

CommandResult dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Sandpiles, graph monoids, dimension groups and shift equivalence", "monodyn"};
  app.fallthrough();
  app.require_subcommand(1);

  Context ctx;
  std::string config_path;
  std::uint64_t seed = 0;
  app.add_flag("--json", ctx.json, "Print the JSON report even where plain text is the default");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized schedules");
  app.add_option("--config", config_path, "Bounds file with 'key = value' lines")->check(CLI::ExistingFile);
  std::vector<std::string> bound_values(bound_names().size());
  std::vector<CLI::Option*> bound_opts;
  for (std::size_t i = 0; i < bound_names().size(); ++i)
    bound_opts.push_back(app.add_option("--" + dashed(bound_names()[i]), bound_values[i])->group("Bounds"));

  std::vector<std::pair<CLI::App*, std::function<CommandResult()>>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    return parent->add_subcommand(name, desc);
  };

  // graph
  auto* graph = app.add_subcommand("graph", "Graph structure")->require_subcommand(1);
  std::string graph_path;
  auto* g_check = leaf(graph, "check", "Sinks, components, sandpile test, cycle exits");
  g_check->add_option("graph", graph_path, "Graph or matrix file")->required();
  leaves.emplace_back(g_check, [&] { return graph_check(graph_path); });
  auto* g_matrix = leaf(graph, "matrix", "Adjacency matrix in declaration order");
  g_matrix->add_option("graph", graph_path, "Graph file")->required();
  leaves.emplace_back(g_matrix, [&] { return graph_matrix(graph_path); });

  // sandpile
  auto* sandpile = app.add_subcommand("sandpile", "Chip firing")->require_subcommand(1);
  StabilizeArgs st;
  auto* s_stab = leaf(sandpile, "stabilize", "Stabilize a configuration");
  s_stab->add_option("graph", st.graph, "Graph file")->required();
  s_stab->add_option("config", st.config, "Configuration file")->required();
  s_stab->add_flag("--trace", st.trace, "Print every intermediate configuration");
  s_stab->add_flag("--random", st.random, "Fire uniformly random unstable vertices (see --seed)");
  leaves.emplace_back(s_stab, [&] { return sandpile_stabilize(ctx, st); });

  std::string add_g, add_x, add_y;
  auto* s_add = leaf(sandpile, "add", "Stable sum of two stable configurations");
  s_add->add_option("graph", add_g, "Graph file")->required();
  s_add->add_option("x", add_x, "Configuration file")->required();
  s_add->add_option("y", add_y, "Configuration file")->required();
  leaves.emplace_back(s_add, [&] { return sandpile_add(ctx, add_g, add_x, add_y); });

  auto* s_monoid = leaf(sandpile, "monoid", "Cayley table of the sandpile monoid");
  s_monoid->add_option("graph", graph_path, "Sandpile graph file")->required();
  leaves.emplace_back(s_monoid, [&] { return sandpile_monoid_cmd(ctx, graph_path); });

  GridArgs ga;
  auto* s_grid = leaf(sandpile, "grid", "Stabilize chips on a rectangular grid");
  s_grid->add_option("--rows", ga.rows, "Grid rows")->required();
  s_grid->add_option("--cols", ga.cols, "Grid columns")->required();
  s_grid->add_option("--mode", ga.mode, "open or closed")->capture_default_str();
  s_grid->add_option("--center", ga.center, "Chips placed on the centre cell");
  s_grid->add_option("--fill", ga.fill, "Chips placed on every cell");
  s_grid->add_option("--place", ga.place, "Extra chips as row,col,chips (repeatable)");
  s_grid->add_option("--ppm", ga.ppm, "Write the stable grid as a PPM image");
  s_grid->add_option("--palette", ga.palette, "Colours for 0..3 chips: r,g,b;r,g,b;r,g,b;r,g,b");
  leaves.emplace_back(s_grid, [&] { return sandpile_grid(ctx, ga); });

  auto* s_render = leaf(sandpile, "render", "Render a grid configuration file as PPM");
  s_render->add_option("config", ga.config, "Configuration over r<row>c<col> vertices")->required();
  s_render->add_option("--rows", ga.rows, "Grid rows")->required();
  s_render->add_option("--cols", ga.cols, "Grid columns")->required();
  s_render->add_option("--mode", ga.mode, "open or closed")->capture_default_str();
  s_render->add_option("-o,--out", ga.ppm, "Output PPM path")->required();
  s_render->add_option("--palette", ga.palette, "Colours for 0..3 chips");
  bool no_stabilize = false;
  s_render->add_flag("--no-stabilize", no_stabilize, "Render the configuration as given");
  leaves.emplace_back(s_render, [&] {
    ga.stabilize = !no_stabilize;
    return sandpile_render(ctx, ga);
  });

  // monoid
  auto* monoid = app.add_subcommand("monoid", "Finitely presented commutative monoids")->require_subcommand(1);
  MonoidArgs ma;
  auto add_monoid_input = [&](CLI::App* sub) {
    sub->add_option("input", ma.input, "Presentation file (gens: ...) or graph file")->required();
    sub->add_flag("--weighted", ma.weighted, "Use vertex weights (outdegree unless given)");
    sub->add_flag("--sink-zero", ma.sink_zero, "Drop the sink generator of a sandpile graph");
  };
  auto* m_present = leaf(monoid, "present", "Print the presentation");
  add_monoid_input(m_present);
  leaves.emplace_back(m_present, [&] { return monoid_present(ma); });
  auto* m_equal = leaf(monoid, "equal", "Bounded word problem x = y");
  add_monoid_input(m_equal);
  m_equal->add_option("x", ma.x, "Element such as 2a+b")->required();
  m_equal->add_option("y", ma.y, "Element")->required();
  leaves.emplace_back(m_equal, [&] { return monoid_equal(ctx, ma); });
  auto* m_enum = leaf(monoid, "enumerate", "Cayley table of a finite monoid");
  add_monoid_input(m_enum);
  leaves.emplace_back(m_enum, [&] { return monoid_enumerate(ctx, ma); });

  // talented
  auto* talented = app.add_subcommand("talented", "Talented monoid windows")->require_subcommand(1);
  int radius = 1;
  auto* t_window = leaf(talented, "window", "Presentation over stages -k..k");
  t_window->add_option("graph", graph_path, "Graph file")->required();
  t_window->add_option("--radius", radius, "Window radius k")->capture_default_str()->check(CLI::NonNegativeNumber);
  leaves.emplace_back(t_window, [&] { return talented_window_cmd(graph_path, radius); });

  // dimgroup
  auto* dim = app.add_subcommand("dimgroup", "Dimension group arithmetic")->require_subcommand(1);
  DimArgs da;
  auto* d_equal = leaf(dim, "equal", "Equality in the direct limit");
  d_equal->add_option("matrix", da.matrix, "Matrix or graph file")->required();
  d_equal->add_option("x", da.x, "Element [v1 ... vn]@stage")->required();
  d_equal->add_option("y", da.y, "Element")->required();
  leaves.emplace_back(d_equal, [&] { return dim_equal_cmd(ctx, da); });
  auto* d_pos = leaf(dim, "positive", "Membership in the positive cone");
  d_pos->add_option("matrix", da.matrix, "Matrix or graph file")->required();
  d_pos->add_option("x", da.x, "Element")->required();
  leaves.emplace_back(d_pos, [&] { return dim_positive_cmd(ctx, da); });
  auto* d_shift = leaf(dim, "shift", "Apply the automorphism induced by the matrix");
  d_shift->add_option("matrix", da.matrix, "Matrix or graph file")->required();
  d_shift->add_option("x", da.x, "Element")->required();
  d_shift->add_option("--direction", da.direction, "forward or backward")->capture_default_str();
  leaves.emplace_back(d_shift, [&] { return dim_shift_cmd(da); });
  auto* d_fib = leaf(dim, "fib", "Golden-ratio cone test phi*m + n >= 0");
  d_fib->add_option("m", da.m, "Integer")->required();
  d_fib->add_option("n", da.n, "Integer")->required();
  leaves.emplace_back(d_fib, [&] { return dim_fib_cmd(da); });

  // shift
  auto* shift = app.add_subcommand("shift", "Shift equivalence certificates and invariants")->require_subcommand(1);
  ShiftArgs sa;
  auto add_pair = [&](CLI::App* sub) {
    sub->add_option("a", sa.a, "Matrix or graph file")->required();
    sub->add_option("b", sa.b, "Matrix or graph file")->required();
  };
  auto* v_es = leaf(shift, "verify-es", "Check A = RS, B = SR");
  add_pair(v_es);
  v_es->add_option("r", sa.r, "R matrix file")->required();
  v_es->add_option("s", sa.s, "S matrix file")->required();
  leaves.emplace_back(v_es, [&] { return shift_verify_es(sa); });
  auto* v_se = leaf(shift, "verify-se", "Check a shift equivalence witness");
  add_pair(v_se);
  v_se->add_option("r", sa.r, "R matrix file")->required();
  v_se->add_option("s", sa.s, "S matrix file")->required();
  v_se->add_option("--lag", sa.lag, "Lag")->capture_default_str()->check(CLI::PositiveNumber);
  leaves.emplace_back(v_se, [&] { return shift_verify_se(sa); });
  auto* v_chain = leaf(shift, "verify-chain", "Check a chain of elementary equivalences (JSON)");
  v_chain->add_option("chain", sa.chain, "Chain JSON file")->required();
  leaves.emplace_back(v_chain, [&] { return shift_verify_chain(sa); });
  auto* s_sse = leaf(shift, "search-sse", "Bounded search for a strong shift equivalence chain");
  add_pair(s_sse);
  s_sse->add_option("--depth", sa.depth, "Maximum chain length");
  s_sse->add_option("--inner", sa.inner, "Maximum inner dimension of factorizations");
  leaves.emplace_back(s_sse, [&] { return shift_search_sse(ctx, sa); });
  auto* s_se = leaf(shift, "search-se", "Bounded search for a shift equivalence witness");
  add_pair(s_se);
  s_se->add_option("--max-lag", sa.max_lag, "Largest lag tried");
  s_se->add_option("--coeff-bound", sa.coeff_bound, "Coefficient range for kernel combinations");
  leaves.emplace_back(s_se, [&] { return shift_search_se(ctx, sa); });
  auto* s_inv = leaf(shift, "invariants", "Bowen-Franks groups and characteristic polynomial cores");
  add_pair(s_inv);
  leaves.emplace_back(s_inv, [&] { return shift_invariants(sa); });

  // lpa
  auto* lpa = app.add_subcommand("lpa", "Leavitt path algebra graph conditions")->require_subcommand(1);
  auto* l_simple = leaf(lpa, "simple", "Cofinality and cycle exits");
  l_simple->add_option("graph", graph_path, "Graph file")->required();
  leaves.emplace_back(l_simple, [&] { return lpa_simple_cmd(graph_path); });
  auto* l_zorn = leaf(lpa, "zorn", "Every cycle has an exit");
  l_zorn->add_option("graph", graph_path, "Graph file")->required();
  leaves.emplace_back(l_zorn, [&] { return lpa_zorn_cmd(graph_path); });
  std::vector<long> iso_params;
  auto* l_miso = leaf(lpa, "matrix-iso", "Matrix Leavitt algebra isomorphism: n r m s");
  l_miso->add_option("params", iso_params, "n r m s")->required()->expected(4);
  leaves.emplace_back(l_miso, [&] { return lpa_iso_cmd(false, iso_params); });
  auto* l_ht = leaf(lpa, "ht-iso", "Higman-Thompson group isomorphism: n r m s");
  l_ht->add_option("params", iso_params, "n r m s")->required()->expected(4);
  leaves.emplace_back(l_ht, [&] { return lpa_iso_cmd(true, iso_params); });
  CompareArgs ca;
  auto* l_cmp = leaf(lpa, "compare", "Bounded comparison of graph monoid invariants");
  l_cmp->add_option("e", ca.e, "First graph")->required();
  l_cmp->add_option("f", ca.f, "Second graph")->required();
  l_cmp->add_option("--mode", ca.mode, "plain or graded")->capture_default_str();
  l_cmp->add_option("--monoid", ca.flavor, "graph or sandpile (plain mode)")->capture_default_str();
  leaves.emplace_back(l_cmp, [&] { return lpa_compare_cmd(ctx, ca); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    CommandResult r;
    if (code == 0) {
      r.out = out.str();
      return r;
    }
    r.exit_code = 2;
    r.err = err.str() + "\n" + app.help();
    return r;
  }

  try {
    if (!config_path.empty()) apply_config(ctx.bounds, read_text(config_path));
  } catch (const std::exception& e) {
    return runtime_error(e.what());
  }
  for (std::size_t i = 0; i < bound_opts.size(); ++i) {
    if (bound_opts[i]->count() == 0) continue;
    try {
      set_bound(ctx.bounds, bound_names()[i], bound_values[i]);
    } catch (const DomainError& e) {
      CommandResult r;
      r.exit_code = 2;
      r.err = "--" + dashed(bound_names()[i]) + ": " + e.what() + "\n";
      return r;
    }
  }

  try {
    if (seed_opt->count() > 0) ctx.seed = seed;
    for (auto& [sub, run] : leaves)
      if (sub->parsed()) return run();
  } catch (const std::exception& e) {
    return runtime_error(e.what());
  }
  return runtime_error("no command selected");
}

}  // namespace monodyn
