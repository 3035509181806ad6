#include "monodyn/grid.hpp"

#include <sstream>

#include "monodyn/error.hpp"

namespace monodyn {

GridMode parse_grid_mode(std::string_view s) {
  if (s == "closed") return GridMode::closed;
  if (s == "open") return GridMode::open;
  throw DomainError("grid mode must be 'open' or 'closed', got '" + std::string(s) + "'");
}

std::string_view to_string(GridMode m) { return m == GridMode::closed ? "closed" : "open"; }

std::string grid_vertex_name(std::size_t row, std::size_t col) {
  return "r" + std::to_string(row) + "c" + std::to_string(col);
}

std::uint64_t grid_degree(const GridSpec& spec, std::size_t row, std::size_t col) {
  std::uint64_t d = 0;
  if (row > 0) ++d;
  if (row + 1 < spec.rows) ++d;
  if (col > 0) ++d;
  if (col + 1 < spec.cols) ++d;
  return d;
}

namespace {

void check_spec(const GridSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0) throw DomainError("grid dimensions must be at least 1");
}

std::uint64_t threshold(const GridSpec& spec, std::size_t row, std::size_t col) {
  return spec.mode == GridMode::open ? 4 : grid_degree(spec, row, col);
}

}  // namespace

Graph make_grid(const GridSpec& spec) {
  check_spec(spec);
  Graph g;
  for (std::size_t r = 0; r < spec.rows; ++r)
    for (std::size_t c = 0; c < spec.cols; ++c) g.add_vertex(grid_vertex_name(r, c));
  VertexId sink = 0;
  if (spec.mode == GridMode::open) sink = g.add_vertex("sink");
  for (std::size_t r = 0; r < spec.rows; ++r)
    for (std::size_t c = 0; c < spec.cols; ++c) {
      VertexId v = spec.cell(r, c);
      if (r > 0) g.add_edge(v, spec.cell(r - 1, c));
      if (r + 1 < spec.rows) g.add_edge(v, spec.cell(r + 1, c));
      if (c > 0) g.add_edge(v, spec.cell(r, c - 1));
      if (c + 1 < spec.cols) g.add_edge(v, spec.cell(r, c + 1));
      if (spec.mode == GridMode::open) {
        std::uint64_t missing = 4 - grid_degree(spec, r, c);
        if (missing > 0) g.add_edge(v, sink, missing);
      }
    }
  return g;
}

void GridState::place(std::size_t row, std::size_t col, std::uint64_t chips) {
  if (row >= spec.rows || col >= spec.cols)
    throw DomainError("placement (" + std::to_string(row) + "," + std::to_string(col) + ") outside " +
                      std::to_string(spec.rows) + "x" + std::to_string(spec.cols) + " grid");
  if (chips > 0 && threshold(spec, row, col) == 0)
    throw DomainError("cell (" + std::to_string(row) + "," + std::to_string(col) + ") is a sink");
  counts[spec.cell(row, col)] += chips;
}

StabilizeStatus stabilize_grid(GridState& state, std::uint64_t budget) {
  const GridSpec& spec = state.spec;
  check_spec(spec);
  const std::size_t rows = spec.rows, cols = spec.cols;
  std::vector<std::uint64_t> thr(spec.cells());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) thr[spec.cell(r, c)] = threshold(spec, r, c);

  auto& counts = state.counts;
  std::vector<std::size_t> work;
  std::vector<char> pending(spec.cells(), 0);
  auto consider = [&](std::size_t i) {
    if (!pending[i] && thr[i] > 0 && counts[i] >= thr[i]) {
      pending[i] = 1;
      work.push_back(i);
    }
  };
  for (std::size_t i = 0; i < spec.cells(); ++i) consider(i);

  std::uint64_t fired = 0;
  while (!work.empty()) {
    std::size_t i = work.back();
    work.pop_back();
    pending[i] = 0;
    std::uint64_t times = counts[i] / thr[i];
    if (times == 0) continue;
    if (times > budget - fired) {
      times = budget - fired;
      if (times == 0) return StabilizeStatus::budget_exceeded;
    }
    fired += times;
    counts[i] -= times * thr[i];
    state.odometer[i] += times;
    const std::size_t r = i / cols, c = i % cols;
    std::uint64_t inside = 0;
    if (r > 0) { counts[i - cols] += times; consider(i - cols); ++inside; }
    if (r + 1 < rows) { counts[i + cols] += times; consider(i + cols); ++inside; }
    if (c > 0) { counts[i - 1] += times; consider(i - 1); ++inside; }
    if (c + 1 < cols) { counts[i + 1] += times; consider(i + 1); ++inside; }
    state.absorbed += times * (thr[i] - inside);
  }
  return StabilizeStatus::stable;
}

ChipConfig grid_to_config(const GridState& state) {
  ChipConfig c;
  c.counts = state.counts;
  if (state.spec.mode == GridMode::open) c.counts.push_back(0);
  c.absorbed = state.absorbed;
  return c;
}

GridState config_to_grid(const GridSpec& spec, const ChipConfig& c) {
  const std::size_t expected = spec.cells() + (spec.mode == GridMode::open ? 1 : 0);
  if (c.counts.size() != expected) throw DomainError("configuration does not match grid size");
  GridState s(spec);
  for (std::size_t i = 0; i < spec.cells(); ++i) s.counts[i] = c.counts[i];
  s.absorbed = c.absorbed;
  return s;
}

Palette parse_palette(std::string_view text) {
  Palette p;
  std::string s(text);
  std::istringstream in(s);
  std::string triple;
  std::size_t k = 0;
  while (std::getline(in, triple, ';')) {
    if (k == 4) throw DomainError("palette has more than four colours");
    std::istringstream parts(triple);
    std::string channel;
    std::array<int, 3> rgb{};
    std::size_t j = 0;
    while (std::getline(parts, channel, ',')) {
      if (j == 3) throw DomainError("colour '" + triple + "' has more than three channels");
      int value;
      try {
        std::size_t used = 0;
        value = std::stoi(channel, &used);
        if (used != channel.size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        throw DomainError("invalid colour channel '" + channel + "'");
      }
      if (value < 0 || value > 255) throw DomainError("colour channel out of 0..255: " + channel);
      rgb[j++] = value;
    }
    if (j != 3) throw DomainError("colour '" + triple + "' needs three channels");
    p.colours[k++] = Rgb{static_cast<std::uint8_t>(rgb[0]), static_cast<std::uint8_t>(rgb[1]),
                         static_cast<std::uint8_t>(rgb[2])};
  }
  if (k != 4) throw DomainError("palette needs exactly four colours");
  return p;
}

std::string render_ppm(const GridSpec& spec, std::span<const std::uint64_t> cell_counts,
                       const Palette& palette) {
  check_spec(spec);
  if (cell_counts.size() < spec.cells()) throw DomainError("too few counts for grid");
  std::string out = "P6\n" + std::to_string(spec.cols) + " " + std::to_string(spec.rows) + "\n255\n";
  out.reserve(out.size() + 3 * spec.cells());
  for (std::size_t i = 0; i < spec.cells(); ++i) {
    const Rgb& c = palette.colour(cell_counts[i]);
    out.push_back(static_cast<char>(c.r));
    out.push_back(static_cast<char>(c.g));
    out.push_back(static_cast<char>(c.b));
  }
  return out;
}

std::string render_ppm(const GridSpec& spec, const ChipConfig& c, const Palette& palette) {
  return render_ppm(spec, std::span<const std::uint64_t>(c.counts).first(spec.cells()), palette);
}

}  // namespace monodyn
