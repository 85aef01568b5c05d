#pragma once

#include <cstdint>
#include <vector>

#include "permstat/types.hpp"

namespace permstat {

// Number of multiset families of nonempty subsets of {1, ..., k} in which
// every element lies in exactly m members. Subset DP over residual
// demands; refuses k > 12 or (m+1)^k above state_budget.
BigNat count_covers(int k, int m, std::int64_t state_budget = 100'000'000);

// The same count by direct enumeration of subset multisets. Validation
// route only; refuses k > 3 or m > 5.
BigNat count_covers_bruteforce(int k, int m);

// Multiplicity profile (u_1, ..., u_m): u_j members of size j.
using UVector = std::vector<int>;

// Coefficient of z^m in prod_{j=1}^{m} (1 + z^j)^{u_j}, computed by
// repeated truncated polynomial multiplication. Requires u.size() == m.
BigNat gamma_coefficient(int m, const UVector& u);

// The same coefficient as sum over (l_1, ..., l_m) with sum_j j l_j = m
// and l_j <= u_j of prod_j C(u_j, l_j). Independent route used for
// cross-validation.
BigNat gamma_binomial_sum(int m, const UVector& u);

}  // namespace permstat
