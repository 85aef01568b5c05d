#include "permstat/covers.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

#include "permstat/detail/bounded_partitions.hpp"
#include "permstat/exactcomb.hpp"

namespace permstat {

namespace {

void check_uvector(int m, const UVector& u) {
  if (m < 1) throw std::domain_error("profile order must be positive");
  if (static_cast<int>(u.size()) != m) {
    throw std::domain_error("profile vector must have length m");
  }
  for (int v : u) {
    if (v < 0) throw std::domain_error("profile entries are nonnegative");
  }
}

}  // namespace

BigNat count_covers(int k, int m, std::int64_t state_budget) {
  if (k < 1 || m < 1) throw std::domain_error("need k >= 1 and m >= 1");
  if (k > 12) throw resource_error("count_covers limited to k <= 12");

  const std::uint64_t radix = static_cast<std::uint64_t>(m) + 1;
  std::uint64_t states = 1;
  std::vector<std::uint64_t> place(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    place[static_cast<std::size_t>(i)] = states;
    if (states > static_cast<std::uint64_t>(state_budget)) {
      throw resource_error("count_covers state space exceeds the budget");
    }
    states *= radix;
  }
  if (states > static_cast<std::uint64_t>(state_budget)) {
    throw resource_error("count_covers state space exceeds the budget");
  }

  // State encodes the residual demand of each element in base m+1; the
  // initial state demands m everywhere. Nonempty subsets are consumed in a
  // fixed order, so each multiset family is counted exactly once.
  std::unordered_map<std::uint64_t, BigNat> table;
  table.reserve(1024);
  table.emplace(states - 1, BigNat(1));

  std::vector<std::pair<std::uint64_t, BigNat>> additions;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << k); ++subset) {
    std::uint64_t digit_sum = 0;
    for (int i = 0; i < k; ++i) {
      if (subset >> i & 1) digit_sum += place[static_cast<std::size_t>(i)];
    }
    additions.clear();
    for (const auto& [state, count] : table) {
      std::uint64_t max_mult = static_cast<std::uint64_t>(m);
      for (int i = 0; i < k && max_mult > 0; ++i) {
        if (subset >> i & 1) {
          std::uint64_t digit =
              state / place[static_cast<std::size_t>(i)] % radix;
          max_mult = std::min(max_mult, digit);
        }
      }
      std::uint64_t shifted = state;
      for (std::uint64_t l = 1; l <= max_mult; ++l) {
        shifted -= digit_sum;
        additions.emplace_back(shifted, count);
      }
    }
    for (auto& [state, count] : additions) {
      table[state] += count;
    }
  }

  auto it = table.find(0);
  return it == table.end() ? BigNat(0) : it->second;
}

BigNat count_covers_bruteforce(int k, int m) {
  if (k < 1 || m < 1) throw std::domain_error("need k >= 1 and m >= 1");
  if (k > 3 || m > 5) {
    throw resource_error("count_covers_bruteforce limited to k <= 3, m <= 5");
  }

  int num_subsets = (1 << k) - 1;
  std::vector<int> residual(static_cast<std::size_t>(k), m);
  BigNat total = 0;
  auto rec = [&](auto&& self, int subset) -> void {
    if (subset > num_subsets) {
      if (std::all_of(residual.begin(), residual.end(),
                      [](int r) { return r == 0; })) {
        total += 1;
      }
      return;
    }
    int max_mult = m;
    for (int i = 0; i < k; ++i) {
      if (subset >> i & 1) {
        max_mult = std::min(max_mult, residual[static_cast<std::size_t>(i)]);
      }
    }
    for (int l = 0; l <= max_mult; ++l) {
      if (l > 0) {
        for (int i = 0; i < k; ++i) {
          if (subset >> i & 1) --residual[static_cast<std::size_t>(i)];
        }
      }
      self(self, subset + 1);
    }
    for (int i = 0; i < k; ++i) {
      if (subset >> i & 1) residual[static_cast<std::size_t>(i)] += max_mult;
    }
  };
  rec(rec, 1);
  return total;
}

BigNat gamma_coefficient(int m, const UVector& u) {
  check_uvector(m, u);
  long long work = 0;
  for (int v : u) work += static_cast<long long>(v) * m;
  if (work > 100'000'000) {
    throw resource_error("gamma_coefficient profile too large");
  }

  std::vector<BigNat> coeffs(static_cast<std::size_t>(m) + 1, BigNat(0));
  coeffs[0] = 1;
  for (int j = 1; j <= m; ++j) {
    for (int rep = 0; rep < u[static_cast<std::size_t>(j) - 1]; ++rep) {
      for (int d = m; d >= j; --d) {
        coeffs[static_cast<std::size_t>(d)] +=
            coeffs[static_cast<std::size_t>(d - j)];
      }
    }
  }
  return coeffs[static_cast<std::size_t>(m)];
}

BigNat gamma_binomial_sum(int m, const UVector& u) {
  check_uvector(m, u);
  BigNat total = 0;
  detail::for_each_bounded_partition(m, u, [&](const std::vector<int>& l) {
    BigNat product = 1;
    for (int j = 1; j <= m; ++j) {
      int lj = l[static_cast<std::size_t>(j) - 1];
      if (lj > 0) {
        product *= binomial(
            static_cast<std::uint64_t>(u[static_cast<std::size_t>(j) - 1]),
            static_cast<std::uint64_t>(lj));
      }
    }
    total += product;
  });
  return total;
}

}  // namespace permstat
