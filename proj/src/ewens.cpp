#include "permstat/ewens.hpp"

#include <algorithm>
#include <cmath>

#include "permstat/rng.hpp"

namespace permstat {

namespace {

void validate(const SamplerConfig& config) {
  if (config.n < 1) throw std::domain_error("sampler requires n >= 1");
  if (!(config.theta > 0.0) || !std::isfinite(config.theta)) {
    throw std::domain_error("Ewens parameter must be positive and finite");
  }
  if (config.replicates < 1) {
    throw std::domain_error("sampler requires replicates >= 1");
  }
}

inline bool opens_new_cycle(SplitMix64& gen, double theta, int i) {
  if (i == 1) return true;  // probability theta/theta; no draw consumed
  return gen.next_unit() < theta / (theta + (i - 1));
}

void kahan_add(double& sum, double& compensation, double value) {
  double y = value - compensation;
  double t = sum + y;
  compensation = (t - sum) - y;
  sum = t;
}

}  // namespace

Permutation sample_permutation(const SamplerConfig& config,
                               std::int64_t replicate) {
  validate(config);
  SplitMix64 gen =
      replicate_stream(config.seed, static_cast<std::uint64_t>(replicate));
  // successor[i] is the next element of i's cycle; inserting i after j
  // splices it in. The successor table is the permutation itself.
  std::vector<int> successor(static_cast<std::size_t>(config.n) + 1, 0);
  for (int i = 1; i <= config.n; ++i) {
    if (opens_new_cycle(gen, config.theta, i)) {
      successor[static_cast<std::size_t>(i)] = i;
    } else {
      int j = 1 + static_cast<int>(
                      gen.next_below(static_cast<std::uint64_t>(i - 1)));
      successor[static_cast<std::size_t>(i)] =
          successor[static_cast<std::size_t>(j)];
      successor[static_cast<std::size_t>(j)] = i;
    }
  }
  return Permutation(
      std::vector<int>(successor.begin() + 1, successor.end()));
}

std::vector<int> sample_cycle_counts(const SamplerConfig& config, int max_m,
                                     std::int64_t replicate) {
  validate(config);
  if (max_m < 1) throw std::domain_error("max_m must be positive");
  SplitMix64 gen =
      replicate_stream(config.seed, static_cast<std::uint64_t>(replicate));
  std::vector<int> cycle_of(static_cast<std::size_t>(config.n) + 1, 0);
  std::vector<int> cycle_size;
  cycle_size.reserve(static_cast<std::size_t>(config.n));
  for (int i = 1; i <= config.n; ++i) {
    if (opens_new_cycle(gen, config.theta, i)) {
      cycle_of[static_cast<std::size_t>(i)] =
          static_cast<int>(cycle_size.size());
      cycle_size.push_back(1);
    } else {
      int j = 1 + static_cast<int>(
                      gen.next_below(static_cast<std::uint64_t>(i - 1)));
      int c = cycle_of[static_cast<std::size_t>(j)];
      cycle_of[static_cast<std::size_t>(i)] = c;
      ++cycle_size[static_cast<std::size_t>(c)];
    }
  }
  std::vector<int> counts(static_cast<std::size_t>(max_m), 0);
  for (int s : cycle_size) {
    if (s <= max_m) ++counts[static_cast<std::size_t>(s) - 1];
  }
  return counts;
}

McMoment mc_moment(const SamplerConfig& config,
                   const std::vector<MomentTerm>& spec) {
  validate(config);
  int max_m = 1;
  for (const auto& term : spec) {
    if (term.length < 1 || term.power < 1) {
      throw std::domain_error("moment terms need length >= 1 and power >= 1");
    }
    max_m = std::max(max_m, term.length);
  }

  double sum = 0.0, sum_compensation = 0.0;
  double sum_sq = 0.0, sum_sq_compensation = 0.0;
  for (std::int64_t r = 0; r < config.replicates; ++r) {
    std::vector<int> counts = sample_cycle_counts(config, max_m, r);
    double value = 1.0;
    for (const auto& term : spec) {
      double c = counts[static_cast<std::size_t>(term.length) - 1];
      for (int e = 0; e < term.power; ++e) value *= c;
    }
    kahan_add(sum, sum_compensation, value);
    kahan_add(sum_sq, sum_sq_compensation, value * value);
  }

  double r = static_cast<double>(config.replicates);
  McMoment result;
  result.estimate = sum / r;
  if (config.replicates > 1) {
    double variance =
        std::max(0.0, (sum_sq - r * result.estimate * result.estimate) /
                          (r - 1.0));
    result.standard_error = std::sqrt(variance / r);
  }
  result.replicates = config.replicates;
  result.seed = config.seed;
  return result;
}

}  // namespace permstat
