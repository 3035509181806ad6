#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monodyn/graph.hpp"
#include "monodyn/sandpile.hpp"

namespace monodyn {

/// closed: chips are conserved and a vertex fires at its grid degree.
/// open: boundary vertices also shed to an implicit sink, every threshold is 4.
enum class GridMode { closed, open };

struct GridSpec {
  std::size_t rows = 1;
  std::size_t cols = 1;
  GridMode mode = GridMode::open;

  std::size_t cells() const noexcept { return rows * cols; }
  std::size_t cell(std::size_t r, std::size_t c) const noexcept { return r * cols + c; }
};

GridMode parse_grid_mode(std::string_view s);
std::string_view to_string(GridMode m);

/// Grid vertices are named "r<row>c<col>" in row-major order; open grids add a
/// final vertex "sink".
Graph make_grid(const GridSpec& spec);
std::string grid_vertex_name(std::size_t row, std::size_t col);

/// Number of in-grid neighbours of a cell.
std::uint64_t grid_degree(const GridSpec& spec, std::size_t row, std::size_t col);

/// Flat-array state for the dedicated grid stabilizer.
struct GridState {
  GridSpec spec;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> odometer;
  std::uint64_t absorbed = 0;

  explicit GridState(const GridSpec& s)
      : spec(s), counts(s.cells(), 0), odometer(s.cells(), 0) {}

  /// Adds chips to a cell; cells with threshold 0 (a 1x1 closed grid) are sinks.
  void place(std::size_t row, std::size_t col, std::uint64_t chips);
  std::uint64_t at(std::size_t row, std::size_t col) const { return counts[spec.cell(row, col)]; }
};

/// Stabilizes in place with a cell worklist and maximal batches. The result is
/// identical to `stabilize` on `make_grid(spec)`.
StabilizeStatus stabilize_grid(GridState& state, std::uint64_t budget = default_firing_budget);

/// Conversions between the flat state and configurations on make_grid(spec).
ChipConfig grid_to_config(const GridState& state);
GridState config_to_grid(const GridSpec& spec, const ChipConfig& c);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Colours for chip counts 0..3; larger counts use the last colour.
struct Palette {
  std::array<Rgb, 4> colours{Rgb{0, 0, 255}, Rgb{0, 255, 255}, Rgb{255, 255, 0}, Rgb{139, 69, 19}};

  const Rgb& colour(std::uint64_t count) const { return colours[count < 3 ? count : 3]; }
};

/// "r,g,b;r,g,b;r,g,b;r,g,b"
Palette parse_palette(std::string_view text);

/// Binary PPM (P6, max 255), one pixel per grid cell in row-major order.
std::string render_ppm(const GridSpec& spec, std::span<const std::uint64_t> cell_counts,
                       const Palette& palette = {});
std::string render_ppm(const GridSpec& spec, const ChipConfig& c, const Palette& palette = {});

}  // namespace monodyn
