#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "permstat/types.hpp"

namespace permstat {

struct Check {
  std::string name;
  bool passed = false;
  nlohmann::json lhs;
  nlohmann::json rhs;
  nlohmann::json tolerance;

  friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  std::vector<Check> checks;
  std::optional<std::uint64_t> seed;
  std::int64_t elapsed_ms = 0;

  bool all_passed() const;

  friend bool operator==(const Report&, const Report&) = default;
};

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

// Exact values are rendered as decimal strings ({"num", "den"} for
// rationals) so nothing is squeezed through a double.
nlohmann::json rat_to_json(const BigRat& value);
std::string nat_to_string(const BigNat& value);

void print_table(const Report& report, std::ostream& out);

}  // namespace permstat
