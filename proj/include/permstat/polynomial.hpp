#pragma once

#include <cstddef>
#include <vector>

#include "permstat/types.hpp"

namespace permstat {

// Dense univariate polynomial with exact rational coefficients.
// Trailing zero coefficients are trimmed; the zero polynomial has
// degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<BigRat> coefficients);

  static Polynomial constant(const BigRat& c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  // Coefficient of x^i, zero beyond the degree.
  const BigRat& coefficient(std::size_t i) const;
  const std::vector<BigRat>& coefficients() const { return coeffs_; }

  BigRat evaluate(const BigRat& x) const;

  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator+(const Polynomial& rhs) const;
  bool operator==(const Polynomial& rhs) const = default;

 private:
  void trim();

  std::vector<BigRat> coeffs_;
};

}  // namespace permstat
