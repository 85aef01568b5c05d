#pragma once

#include <cstdint>

#include "permstat/polynomial.hpp"
#include "permstat/types.hpp"

namespace permstat {

// Binomial coefficient C(n, k); zero when k > n.
BigNat binomial(std::uint64_t n, std::uint64_t k);

// n!
BigNat factorial(unsigned n);

// Bell number B_n, computed by the binomial recurrence
// B_{n+1} = sum_k C(n, k) B_k and memoized.
BigNat bell(unsigned n);

// Stirling number of the second kind: partitions of an n-set into k
// nonempty blocks. Zero when k > n, or when exactly one of n, k is zero.
BigNat stirling2(unsigned n, unsigned k);

// Unsigned Stirling number of the first kind: permutations of [n] with
// exactly k cycles. Requires 1 <= k <= n.
BigNat stirling1_unsigned(unsigned n, unsigned k);

// x (x-1) ... (x-j+1); 1 when j = 0.
BigRat falling_factorial(const BigRat& x, unsigned j);

// theta (theta+1) ... (theta+n-1); 1 when n = 0.
BigRat rising_factorial(const BigRat& theta, unsigned n);

// The rising factorial as a polynomial in theta. Its coefficient of
// theta^k equals stirling1_unsigned(n, k).
Polynomial rising_factorial_poly(unsigned n);

// Touchard polynomial T_k(x) = sum_j stirling2(k, j) x^j, so that
// T_k(1) = bell(k).
Polynomial touchard(unsigned k);

// Evaluates e^{-x} sum_{j >= 0} j^n x^j / j! by truncation, with the tail
// certified below rel_tol times the returned value. Equals touchard(n)
// evaluated at x, and bell(n) at x = 1, up to that error. Requires x > 0
// and rel_tol > 0.
long double dobinski(unsigned n, long double x, long double rel_tol);

}  // namespace permstat
