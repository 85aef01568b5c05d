#pragma once

#include <cstdint>
#include <vector>

#include "permstat/perm.hpp"

namespace permstat {

struct SamplerConfig {
  int n = 1;
  double theta = 1.0;
  std::uint64_t seed = 0;
  std::int64_t replicates = 1;
};

// One draw from the Ewens measure by sequential insertion: element i opens
// a new cycle with probability theta/(theta + i - 1), otherwise it is
// inserted after a uniformly chosen earlier element. Replicate r consumes
// the stream derived from (config.seed, r).
Permutation sample_permutation(const SamplerConfig& config,
                               std::int64_t replicate = 0);

// Cycle counts c_1..c_max_m of the same draw without materializing the
// permutation; consumes the random stream identically bit for bit.
std::vector<int> sample_cycle_counts(const SamplerConfig& config, int max_m,
                                     std::int64_t replicate = 0);

struct McMoment {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of E[prod_i C_{m_i}^{k_i}] over config.replicates
// draws. Accumulation is Kahan-compensated so chunked and sequential runs
// agree to near machine precision.
McMoment mc_moment(const SamplerConfig& config,
                   const std::vector<MomentTerm>& spec);

}  // namespace permstat
