#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace permstat {

// Exact arithmetic backing every identity check. BigNat values are
// nonnegative by construction everywhere they are produced; BigRat is
// kept in lowest terms with a positive denominator by the backend.
using BigNat = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Thrown when an exact computation would exceed its enumeration or
// state budget. The command line tool maps this to exit code 3.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

}  // namespace permstat
