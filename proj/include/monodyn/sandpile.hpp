#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "monodyn/graph.hpp"
#include "monodyn/monoid.hpp"

namespace monodyn {

/// Chip counts indexed by vertex; sink entries are always zero and chips that
/// reach a sink are tallied in `absorbed`.
struct ChipConfig {
  std::vector<std::uint64_t> counts;
  std::uint64_t absorbed = 0;

  std::uint64_t total() const;
  /// Counts only; the absorbed tally is bookkeeping.
  bool same_counts(const ChipConfig& other) const { return counts == other.counts; }
  friend bool operator==(const ChipConfig&, const ChipConfig&) = default;
};

struct Odometer {
  std::vector<std::uint64_t> firings;

  std::uint64_t total() const;
  friend bool operator==(const Odometer&, const Odometer&) = default;
};

ChipConfig zero_config(const Graph& g);
/// Checks the size and that sinks carry no chips.
void validate_config(const Graph& g, const ChipConfig& c);
bool is_stable(const Graph& g, const ChipConfig& c);
bool is_stable_at(const Graph& g, const ChipConfig& c, VertexId v);

/// Config file: lines "<vertex> <count>"; absent vertices hold 0.
ChipConfig parse_config(const Graph& g, std::string_view text);
std::string format_config(const Graph& g, const ChipConfig& c);

/// Fires `v` once. Throws DomainError when `v` is a sink or holds fewer chips
/// than its outdegree.
ChipConfig fire(const Graph& g, const ChipConfig& c, VertexId v);

enum class StabilizeStatus { stable, budget_exceeded };

struct StabilizeResult {
  ChipConfig config;
  Odometer odometer;
  StabilizeStatus status = StabilizeStatus::stable;
  std::uint64_t firings = 0;
};

/// Called once per batch: `v` fired `times` times in a row.
using FiringObserver = std::function<void(VertexId v, std::uint64_t times)>;

constexpr std::uint64_t default_firing_budget = 1'000'000'000;

/// Work-queue stabilizer. Unstable vertices are queued in declaration order; a
/// popped vertex fires floor(count/outdegree) times at once, newly unstable
/// heads are appended, and the vertex is re-queued if its loops left it unstable.
StabilizeResult stabilize(const Graph& g, const ChipConfig& c,
                          std::uint64_t budget = default_firing_budget,
                          const FiringObserver& observer = {});

/// Single firings of a uniformly random unstable vertex.
StabilizeResult stabilize_random(const Graph& g, const ChipConfig& c, std::mt19937_64& rng,
                                 std::uint64_t budget = default_firing_budget);

/// Stabilized sum of two stable configurations.
ChipConfig stable_add(const Graph& g, const ChipConfig& a, const ChipConfig& b,
                      std::uint64_t budget = default_firing_budget);

/// Every intermediate configuration of the default schedule, one per single
/// firing, starting with `c` itself.
std::vector<ChipConfig> firing_trace(const Graph& g, const ChipConfig& c,
                                     std::uint64_t budget = default_firing_budget);

/// Additive notation "6v+u". Terms follow the order in which vertices first
/// hold chips across `states`, ties in declaration order.
std::vector<std::string> format_trace(const Graph& g, const std::vector<ChipConfig>& states);

/// Stable configurations under stable_add. Elements are coefficient vectors over
/// the non-sink vertices (the generators of the sink-zero presentation).
MonoidTable sandpile_monoid(const Graph& g, std::size_t max_elements = 10000,
                            std::uint64_t budget = default_firing_budget);

}  // namespace monodyn
