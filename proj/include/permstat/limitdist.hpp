#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "permstat/types.hpp"

namespace permstat {

// Law of the limiting fixed-set statistic truncated to a finite profile
// box: independent Z_j ~ Poisson(1/j), j = 1..m, pushed through
// gamma(u) = [z^m] prod_j (1+z^j)^{u_j} and aggregated by value.
struct TruncatedDistribution {
  std::vector<std::pair<BigNat, double>> support;  // (value, mass), ascending
  double mass_captured = 0.0;
  double epsilon = 0.0;
};

// Truncates the limit law of E_m to a box with under epsilon mass outside.
// With moment_order p > 0 the box is additionally sized so every truncated
// moment of order <= p is within epsilon of the full one (the dropped
// contribution to E[E_m^p] is bounded through E[(1+u_j+W_j)^{pm}] with
// W_j the Poisson total of the other coordinates). Requires m <= 12 and
// epsilon in (0, 0.1]; throws resource_error when the box exceeds
// box_budget profiles.
TruncatedDistribution limit_distribution(int m, double epsilon,
                                         int moment_order = 3,
                                         std::int64_t box_budget = 16'000'000);

// k-th moment of the truncated law.
double distribution_moment(const TruncatedDistribution& dist, int k);

// Rigorous bracket for P(E_m >= 1): captured mass on positive values, plus
// the missing mass on the upper end. Width is at most epsilon.
std::pair<double, double> prob_positive(int m, double epsilon);

struct EgfValue {
  double x = 0.0;
  double value = 0.0;
  double truncation_bound = 0.0;  // certified bound on the dropped tail
};

// V_m(x) = E[e^{x E_m}] by box truncation of the profile sum. The dropped
// tail is certifiable only where e^{x gamma} stays bounded over dropped
// profiles: x <= 1 for m = 1, x <= 0 for m >= 2 (for m >= 2 and x > 0 the
// expectation itself is infinite; see README).
EgfValue cover_egf(int m, double x, double epsilon);

// Closed forms for m = 2 and m = 3:
//   V_2(x) = e^{-3/2} e^{e^x/2} sum_r e^{C(r,2) x} / r!
//   V_3(x) = e^{-11/6} e^{e^x/3} sum_r e^{C(r,3) x + e^{rx}/2} / r!
// with a certified series tail. Same divergence caveat, so x <= 0 is
// required.
double cover_egf_closed(int m, double x);

// Taylor coefficients of V_m at 0 for k = 1..max_k; coefficient k equals
// count_covers(k, m) / k!.
std::vector<BigRat> cover_egf_coefficients(int m, int max_k);

}  // namespace permstat
