#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace permstat {

// Runs one command-line invocation (args excludes the program name) and
// writes the report to out, diagnostics to err. Exit codes: 0 success,
// 1 failed checks, 2 usage or domain errors, 3 resource budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace permstat
