#include "permstat/report.hpp"

#include <iomanip>
#include <ostream>

namespace permstat {

bool Report::all_passed() const {
  for (const auto& check : checks) {
    if (!check.passed) return false;
  }
  return true;
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json j;
  j["command"] = report.command;
  j["inputs"] = report.inputs;
  j["outputs"] = report.outputs;
  j["checks"] = nlohmann::json::array();
  for (const auto& check : report.checks) {
    j["checks"].push_back({{"name", check.name},
                           {"status", check.passed ? "pass" : "fail"},
                           {"lhs", check.lhs},
                           {"rhs", check.rhs},
                           {"tolerance", check.tolerance}});
  }
  if (report.seed) j["seed"] = *report.seed;
  j["elapsed_ms"] = report.elapsed_ms;
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report report;
  report.command = j.at("command").get<std::string>();
  report.inputs = j.at("inputs");
  report.outputs = j.at("outputs");
  for (const auto& c : j.at("checks")) {
    Check check;
    check.name = c.at("name").get<std::string>();
    check.passed = c.at("status").get<std::string>() == "pass";
    check.lhs = c.at("lhs");
    check.rhs = c.at("rhs");
    check.tolerance = c.at("tolerance");
    report.checks.push_back(std::move(check));
  }
  if (j.contains("seed")) report.seed = j.at("seed").get<std::uint64_t>();
  report.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
  return report;
}

nlohmann::json rat_to_json(const BigRat& value) {
  return {{"num", boost::multiprecision::numerator(value).str()},
          {"den", boost::multiprecision::denominator(value).str()}};
}

std::string nat_to_string(const BigNat& value) { return value.str(); }

void print_table(const Report& report, std::ostream& out) {
  out << "command: " << report.command << "\n";
  for (const auto& [key, value] : report.inputs.items()) {
    out << "  input  " << key << " = " << value.dump() << "\n";
  }
  for (const auto& [key, value] : report.outputs.items()) {
    out << "  output " << key << " = " << value.dump() << "\n";
  }
  if (!report.checks.empty()) {
    for (const auto& check : report.checks) {
      out << "  [" << (check.passed ? "PASS" : "FAIL") << "] "
          << std::setw(56) << std::left << check.name
          << " lhs=" << check.lhs.dump() << " rhs=" << check.rhs.dump()
          << " tol=" << check.tolerance.dump() << "\n";
    }
    std::size_t passed = 0;
    for (const auto& check : report.checks) passed += check.passed ? 1 : 0;
    out << "  " << passed << "/" << report.checks.size() << " checks passed\n";
  }
  out << "  elapsed_ms: " << report.elapsed_ms << "\n";
}

}  // namespace permstat
