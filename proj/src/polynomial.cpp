#include "permstat/polynomial.hpp"

#include <algorithm>
#include <utility>

namespace permstat {

namespace {
const BigRat kZero = 0;
}

Polynomial::Polynomial(std::vector<BigRat> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::constant(const BigRat& c) {
  return Polynomial(std::vector<BigRat>{c});
}

const BigRat& Polynomial::coefficient(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

BigRat Polynomial::evaluate(const BigRat& x) const {
  BigRat acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * x + coeffs_[i];
  }
  return acc;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (coeffs_.empty() || rhs.coeffs_.empty()) return Polynomial();
  std::vector<BigRat> out(coeffs_.size() + rhs.coeffs_.size() - 1, BigRat(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  std::vector<BigRat> out(std::max(coeffs_.size(), rhs.coeffs_.size()),
                          BigRat(0));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = coefficient(i) + rhs.coefficient(i);
  }
  return Polynomial(std::move(out));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

}  // namespace permstat
