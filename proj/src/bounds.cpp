#include "monodyn/bounds.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "monodyn/error.hpp"

namespace monodyn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value, T min_value) {
  std::string digits;
  for (char c : value)
    if (c != '_') digits += c;
  T out{};
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc() || end != digits.data() + digits.size() || digits.empty())
    throw DomainError("bound '" + std::string(key) + "' needs an integer, got '" + std::string(value) + "'");
  if (out < min_value)
    throw DomainError("bound '" + std::string(key) + "' must be at least " + std::to_string(min_value));
  return out;
}

}  // namespace

const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names{"search_depth", "monoid_elements", "max_power",   "firing_budget",
                                              "max_states",   "max_inner_dim",   "max_nodes",   "max_lag",
                                              "coeff_bound",  "max_assignments"};
  return names;
}

void set_bound(Bounds& b, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "search_depth")
    b.search_depth = parse_number<std::size_t>(key, value, 0);
  else if (key == "monoid_elements")
    b.monoid_elements = parse_number<std::size_t>(key, value, 1);
  else if (key == "max_power")
    b.max_power = parse_number<unsigned>(key, value, 0);
  else if (key == "firing_budget")
    b.firing_budget = parse_number<std::uint64_t>(key, value, 0);
  else if (key == "max_states")
    b.max_states = parse_number<std::size_t>(key, value, 1);
  else if (key == "max_inner_dim")
    b.max_inner_dim = parse_number<std::size_t>(key, value, 1);
  else if (key == "max_nodes")
    b.max_nodes = parse_number<std::size_t>(key, value, 1);
  else if (key == "max_lag")
    b.max_lag = parse_number<unsigned>(key, value, 1);
  else if (key == "coeff_bound")
    b.coeff_bound = parse_number<int>(key, value, 1);
  else if (key == "max_assignments")
    b.max_assignments = parse_number<std::size_t>(key, value, 1);
  else
    throw DomainError("unknown bound '" + std::string(key) + "'");
}

void apply_config(Bounds& b, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty() || (s.front() == '[' && s.back() == ']')) continue;
    auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    try {
      set_bound(b, trim(s.substr(0, eq)), s.substr(eq + 1));
    } catch (const DomainError& e) {
      throw ParseError(line_no, e.what());
    }
  }
}

}  // namespace monodyn
