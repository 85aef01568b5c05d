#include "permstat/limitdist.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "permstat/covers.hpp"
#include "permstat/exactcomb.hpp"

namespace permstat {

namespace {

constexpr int kMaxOrder = 12;
constexpr int kScanLimit = 512;

void check_limit_args(int m, double epsilon) {
  if (m < 1) throw std::domain_error("order m must be positive");
  if (m > kMaxOrder) {
    throw resource_error("limit computations capped at m <= " +
                         std::to_string(kMaxOrder));
  }
  if (!(epsilon > 0.0) || epsilon > 0.1) {
    throw std::domain_error("epsilon must lie in (0, 0.1]");
  }
}

std::vector<long double> poisson_pmf(long double lambda, int count) {
  std::vector<long double> pmf(static_cast<std::size_t>(count));
  pmf[0] = std::exp(-lambda);
  for (int u = 1; u < count; ++u) {
    pmf[static_cast<std::size_t>(u)] =
        pmf[static_cast<std::size_t>(u) - 1] * lambda / u;
  }
  return pmf;
}

// Raw moments E[W^s], s = 0..max_order, of W ~ Poisson(mu), via
// E[W^{s+1}] = mu * sum_i C(s, i) E[W^i].
std::vector<long double> poisson_moments(long double mu, int max_order) {
  std::vector<long double> moments(static_cast<std::size_t>(max_order) + 1);
  moments[0] = 1.0L;
  std::vector<long double> binom = {1.0L};
  for (int s = 0; s < max_order; ++s) {
    long double next = 0.0L;
    for (int i = 0; i <= s; ++i) {
      next += binom[static_cast<std::size_t>(i)] *
              moments[static_cast<std::size_t>(i)];
    }
    moments[static_cast<std::size_t>(s) + 1] = mu * next;
    binom.push_back(1.0L);
    for (int i = s; i >= 1; --i) {
      binom[static_cast<std::size_t>(i)] +=
          binom[static_cast<std::size_t>(i) - 1];
    }
  }
  return moments;
}

// Per-coordinate truncation caps. Coordinate j is capped so that the
// Poisson(1/j) tail mass above the cap stays under epsilon/(2m); with
// moment_order p > 0 the cap is raised until the dropped contribution to
// E[E_m^p] <= E[(1+u+W_j)^{pm}; u > cap] also stays under epsilon/(2m),
// using gamma(u) <= (1 + sum_j u_j)^m.
std::vector<int> truncation_caps(int m, double epsilon, int moment_order) {
  long double budget = static_cast<long double>(epsilon) / (2 * m);
  long double h_m = 0.0L;
  for (int j = 1; j <= m; ++j) h_m += 1.0L / j;

  std::vector<int> caps(static_cast<std::size_t>(m), 0);
  for (int j = 1; j <= m; ++j) {
    std::vector<long double> pmf = poisson_pmf(1.0L / j, kScanLimit);

    long double tail = 1.0L;
    int mass_cap = kScanLimit - 1;
    for (int u = 0; u < kScanLimit; ++u) {
      tail -= pmf[static_cast<std::size_t>(u)];
      if (tail < budget) {
        mass_cap = u;
        break;
      }
    }

    int cap = mass_cap;
    if (moment_order > 0) {
      int power = moment_order * m;
      std::vector<long double> w_moments =
          poisson_moments(h_m - 1.0L / j, power);
      std::vector<long double> binom(static_cast<std::size_t>(power) + 1,
                                     0.0L);
      binom[0] = 1.0L;
      for (int s = 1; s <= power; ++s) {
        for (int i = s; i >= 1; --i) {
          binom[static_cast<std::size_t>(i)] +=
              binom[static_cast<std::size_t>(i) - 1];
        }
      }
      std::vector<long double> term(static_cast<std::size_t>(kScanLimit));
      for (int u = 0; u < kScanLimit; ++u) {
        long double a = 1.0L + u;
        long double a_pow = 1.0L;  // a^{power-s}, built from s = power down
        long double bound = 0.0L;
        for (int s = power; s >= 0; --s) {
          bound += binom[static_cast<std::size_t>(s)] * a_pow *
                   w_moments[static_cast<std::size_t>(s)];
          a_pow *= a;
        }
        term[static_cast<std::size_t>(u)] =
            pmf[static_cast<std::size_t>(u)] * bound;
      }
      long double suffix = 0.0L;
      int moment_cap = kScanLimit - 1;
      for (int u = kScanLimit - 1; u >= 0; --u) {
        suffix += term[static_cast<std::size_t>(u)];
        if (suffix >= budget) {
          moment_cap = u;  // cap must keep everything above u
          break;
        }
        moment_cap = u - 1;
      }
      cap = std::max(cap, std::max(moment_cap, 0));
    }
    caps[static_cast<std::size_t>(j) - 1] = cap;
  }
  return caps;
}

std::int64_t box_size(const std::vector<int>& caps, std::int64_t budget) {
  std::int64_t size = 1;
  for (int cap : caps) {
    size *= cap + 1;
    if (size > budget) {
      throw resource_error(
          "profile box exceeds the state budget; lower moment_order or "
          "raise the budget");
    }
  }
  return size;
}

// Enumerates the profile box, maintaining the weight and the truncated
// polynomial prod_j (1+z^j)^{u_j} incrementally; leaf(gamma, weight) runs
// once per profile.
template <typename Leaf>
void enumerate_profiles(int m, const std::vector<int>& caps,
                        const std::vector<std::vector<long double>>& pmf,
                        Leaf&& leaf) {
  std::vector<BigNat> initial(static_cast<std::size_t>(m) + 1, BigNat(0));
  initial[0] = 1;
  auto rec = [&](auto&& self, int j, long double weight,
                 const std::vector<BigNat>& prefix) -> void {
    if (j > m) {
      leaf(prefix[static_cast<std::size_t>(m)], weight);
      return;
    }
    std::vector<BigNat> poly = prefix;
    const auto& table = pmf[static_cast<std::size_t>(j) - 1];
    int cap = caps[static_cast<std::size_t>(j) - 1];
    for (int u = 0; u <= cap; ++u) {
      self(self, j + 1, weight * table[static_cast<std::size_t>(u)], poly);
      if (u < cap) {
        for (int d = m; d >= j; --d) {
          poly[static_cast<std::size_t>(d)] +=
              poly[static_cast<std::size_t>(d - j)];
        }
      }
    }
  };
  rec(rec, 1, 1.0L, initial);
}

std::vector<std::vector<long double>> pmf_tables(int m,
                                                 const std::vector<int>& caps) {
  std::vector<std::vector<long double>> pmf;
  pmf.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    pmf.push_back(
        poisson_pmf(1.0L / j, caps[static_cast<std::size_t>(j) - 1] + 1));
  }
  return pmf;
}

}  // namespace

TruncatedDistribution limit_distribution(int m, double epsilon,
                                         int moment_order,
                                         std::int64_t box_budget) {
  check_limit_args(m, epsilon);
  if (moment_order < 0) throw std::domain_error("moment_order must be >= 0");
  if (box_budget < 1) throw std::domain_error("box_budget must be positive");

  std::vector<int> caps = truncation_caps(m, epsilon, moment_order);
  box_size(caps, box_budget);
  auto pmf = pmf_tables(m, caps);

  std::map<BigNat, long double> mass;
  enumerate_profiles(m, caps, pmf,
                     [&](const BigNat& gamma, long double weight) {
                       mass[gamma] += weight;
                     });

  TruncatedDistribution dist;
  dist.epsilon = epsilon;
  long double total = 0.0L;
  dist.support.reserve(mass.size());
  for (const auto& [value, weight] : mass) {
    total += weight;
    dist.support.emplace_back(value, static_cast<double>(weight));
  }
  dist.mass_captured = static_cast<double>(total);
  return dist;
}

double distribution_moment(const TruncatedDistribution& dist, int k) {
  if (k < 0) throw std::domain_error("moment order must be nonnegative");
  long double total = 0.0L;
  for (const auto& [value, probability] : dist.support) {
    BigNat power = 1;
    for (int e = 0; e < k; ++e) power *= value;
    total += probability * power.convert_to<long double>();
  }
  return static_cast<double>(total);
}

std::pair<double, double> prob_positive(int m, double epsilon) {
  TruncatedDistribution dist = limit_distribution(m, epsilon, 0);
  double zero_mass = 0.0;
  if (!dist.support.empty() && dist.support.front().first == 0) {
    zero_mass = dist.support.front().second;
  }
  double lower = std::max(0.0, dist.mass_captured - zero_mass);
  double upper = std::min(1.0, lower + std::max(0.0, 1.0 - dist.mass_captured));
  return {lower, upper};
}

EgfValue cover_egf(int m, double x, double epsilon) {
  check_limit_args(m, epsilon);
  double x_max = (m == 1) ? 1.0 : 0.0;
  if (x > x_max) {
    throw std::domain_error(
        "cover_egf: tail not certifiable for x > " + std::to_string(x_max) +
        " at this order (the expectation diverges for m >= 2, x > 0)");
  }

  std::vector<int> caps = truncation_caps(m, epsilon, 0);
  if (m == 1 && x > 0.0) {
    // The mass-sized cap bounds dropped probability, not dropped
    // e^{xu}-weighted mass; extend it until the certified bound itself
    // fits under epsilon.
    auto tail_bound = [&](int cap) {
      long double t = std::exp(-1.0L);
      for (int u = 1; u <= cap + 1; ++u) t /= u;
      t *= std::exp(static_cast<long double>(x) * (cap + 1));
      long double ratio = std::exp(static_cast<long double>(x)) / (cap + 2);
      return t / (1.0L - ratio);
    };
    while (caps[0] < 400 && tail_bound(caps[0]) > epsilon) ++caps[0];
  }
  auto pmf = pmf_tables(m, caps);

  long double sum = 0.0L;
  long double captured = 0.0L;
  long double lx = static_cast<long double>(x);
  enumerate_profiles(m, caps, pmf,
                     [&](const BigNat& gamma, long double weight) {
                       captured += weight;
                       sum += weight *
                              std::exp(lx * gamma.convert_to<long double>());
                     });

  long double bound;
  if (m == 1) {
    // Tail of e^{-1} sum_{u > U} e^{xu} / u!: geometric from the first
    // dropped term, ratios e^x/(u+1) decreasing.
    int cap = caps[0];
    long double t = std::exp(-1.0L);
    for (int u = 1; u <= cap + 1; ++u) t /= u;
    t *= std::exp(lx * (cap + 1));
    long double ratio = std::exp(lx) / (cap + 2);
    bound = t / (1.0L - ratio);
  } else {
    // x <= 0, so every dropped term is at most its weight.
    bound = std::max(0.0L, 1.0L - captured);
  }

  EgfValue result;
  result.x = x;
  result.value = static_cast<double>(sum);
  result.truncation_bound = static_cast<double>(bound);
  return result;
}

double cover_egf_closed(int m, double x) {
  if (m != 2 && m != 3) {
    throw std::domain_error("closed forms available for m = 2 and m = 3 only");
  }
  if (x > 0.0) {
    throw std::domain_error(
        "cover_egf_closed requires x <= 0: the series diverges for x > 0");
  }

  long double lx = static_cast<long double>(x);
  long double prefactor =
      (m == 2) ? std::exp(-1.5L + std::exp(lx) / 2)
               : std::exp(-11.0L / 6 + std::exp(lx) / 3);
  long double sum = 0.0L;
  int consecutive_small = 0;
  for (int r = 0; r < 400; ++r) {
    long double exponent;
    if (m == 2) {
      exponent = lx * r * (r - 1) / 2;
    } else {
      exponent = lx * r * (r - 1) * (r - 2) / 6 + std::exp(lx * r) / 2;
    }
    long double term = std::exp(exponent - std::lgamma(r + 1.0L));
    sum += term;
    // For x <= 0 consecutive term ratios are below 1/(r+1), so the tail
    // after term r is under term/r.
    consecutive_small = (term < 1e-16L * sum) ? consecutive_small + 1 : 0;
    if (r >= 3 && consecutive_small >= 3 && term / r < 1e-13L * sum) break;
  }
  return static_cast<double>(prefactor * sum);
}

std::vector<BigRat> cover_egf_coefficients(int m, int max_k) {
  if (m < 1 || max_k < 1) throw std::domain_error("need m >= 1 and K >= 1");
  std::vector<BigRat> coefficients;
  coefficients.reserve(static_cast<std::size_t>(max_k));
  for (int k = 1; k <= max_k; ++k) {
    coefficients.push_back(BigRat(count_covers(k, m)) /
                           BigRat(factorial(static_cast<unsigned>(k))));
  }
  return coefficients;
}

}  // namespace permstat
