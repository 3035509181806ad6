#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace monodyn {

/// Search and iteration limits shared by every command.
struct Bounds {
  std::size_t search_depth = 6;
  std::size_t monoid_elements = 10000;
  unsigned max_power = 64;
  std::uint64_t firing_budget = 1'000'000'000;
  std::size_t max_states = 200000;
  std::size_t max_inner_dim = 2;
  std::size_t max_nodes = 20000;
  unsigned max_lag = 4;
  int coeff_bound = 2;
  std::size_t max_assignments = 1000000;
};

/// Names accepted by set_bound and the configuration file.
const std::vector<std::string>& bound_names();

/// Sets one bound from text; throws DomainError on unknown keys or bad values.
void set_bound(Bounds& b, std::string_view key, std::string_view value);

/// Applies "key = value" lines ('#' starts a comment; an optional "[bounds]"
/// table header is ignored). Throws ParseError with the line number.
void apply_config(Bounds& b, std::string_view text);

}  // namespace monodyn
