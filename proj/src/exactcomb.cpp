#include "permstat/exactcomb.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace permstat {

namespace {

std::mutex bell_mutex;
std::vector<BigNat> bell_table = {BigNat(1)};

std::mutex s2_mutex;
std::vector<std::vector<BigNat>> s2_table = {{BigNat(1)}};

std::mutex s1_mutex;
std::vector<std::vector<BigNat>> s1_table = {{BigNat(1)}};

}  // namespace

BigNat binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigNat result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigNat factorial(unsigned n) {
  BigNat result = 1;
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

BigNat bell(unsigned n) {
  std::scoped_lock lock(bell_mutex);
  while (bell_table.size() <= n) {
    unsigned prev = static_cast<unsigned>(bell_table.size()) - 1;
    BigNat next = 0;
    for (unsigned k = 0; k <= prev; ++k) {
      next += binomial(prev, k) * bell_table[k];
    }
    bell_table.push_back(next);
  }
  return bell_table[n];
}

BigNat stirling2(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::scoped_lock lock(s2_mutex);
  while (s2_table.size() <= n) {
    unsigned row = static_cast<unsigned>(s2_table.size());
    const auto& prev = s2_table[row - 1];
    std::vector<BigNat> cur(row + 1, BigNat(0));
    for (unsigned j = 1; j <= row; ++j) {
      cur[j] = (j < prev.size() ? BigNat(j * prev[j]) : BigNat(0)) +
               prev[j - 1];
    }
    s2_table.push_back(std::move(cur));
  }
  return s2_table[n][k];
}

BigNat stirling1_unsigned(unsigned n, unsigned k) {
  if (n < 1 || k < 1 || k > n) {
    throw std::domain_error("stirling1_unsigned requires 1 <= k <= n");
  }
  std::scoped_lock lock(s1_mutex);
  while (s1_table.size() <= n) {
    unsigned row = static_cast<unsigned>(s1_table.size());
    const auto& prev = s1_table[row - 1];
    std::vector<BigNat> cur(row + 1, BigNat(0));
    for (unsigned j = 1; j <= row; ++j) {
      BigNat carry = j < prev.size() ? BigNat((row - 1) * prev[j]) : BigNat(0);
      cur[j] = carry + prev[j - 1];
    }
    s1_table.push_back(std::move(cur));
  }
  return s1_table[n][k];
}

BigRat falling_factorial(const BigRat& x, unsigned j) {
  BigRat result = 1;
  for (unsigned i = 0; i < j; ++i) result *= x - i;
  return result;
}

BigRat rising_factorial(const BigRat& theta, unsigned n) {
  BigRat result = 1;
  for (unsigned i = 0; i < n; ++i) result *= theta + i;
  return result;
}

Polynomial rising_factorial_poly(unsigned n) {
  Polynomial result = Polynomial::constant(1);
  for (unsigned i = 0; i < n; ++i) {
    result = result * Polynomial({BigRat(i), BigRat(1)});
  }
  return result;
}

Polynomial touchard(unsigned k) {
  std::vector<BigRat> coeffs(k + 1, BigRat(0));
  for (unsigned j = 0; j <= k; ++j) coeffs[j] = BigRat(stirling2(k, j));
  return Polynomial(std::move(coeffs));
}

long double dobinski(unsigned n, long double x, long double rel_tol) {
  if (!(x > 0.0L)) throw std::domain_error("dobinski requires x > 0");
  if (!(rel_tol > 0.0L)) throw std::domain_error("dobinski requires rel_tol > 0");

  // Term t_j = j^n x^j / j!. Ratios t_{j+1}/t_j = (x/(j+1)) ((j+1)/j)^n are
  // strictly decreasing in j, so once a ratio drops below one the tail is
  // bounded by a geometric series.
  long double sum = (n == 0) ? 1.0L : 0.0L;
  long double term = x;  // j = 1
  sum += term;
  const unsigned min_terms =
      std::max(3 * n, 2 * static_cast<unsigned>(std::ceil(x)) + 10);
  unsigned decreasing = 0;
  for (unsigned j = 2;; ++j) {
    long double ratio =
        (x / j) * std::pow(static_cast<long double>(j) / (j - 1), n);
    long double next = term * ratio;
    sum += next;
    decreasing = (next < term) ? decreasing + 1 : 0;
    term = next;
    if (j >= min_terms && decreasing >= 5 && term < rel_tol * sum) {
      long double r =
          (x / (j + 1)) * std::pow(static_cast<long double>(j + 1) / j, n);
      if (r < 1.0L && term * r / (1.0L - r) < rel_tol * sum) break;
    }
    if (j > 1000000) {
      throw resource_error("dobinski failed to certify the tail");
    }
  }
  return std::exp(-x) * sum;
}

}  // namespace permstat
