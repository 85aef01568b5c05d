#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include "doctest.h"
#include "permstat/exactcomb.hpp"

using namespace permstat;

namespace {

BigRat rat(long long num, long long den) { return BigRat(num) / BigRat(den); }

// Counts partitions of an n-set into exactly k nonempty blocks by direct
// enumeration of restricted-growth strings.
long long partition_count_oracle(int n, int k) {
  long long count = 0;
  std::vector<int> assignment(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == n) {
      if (used == k) ++count;
      return;
    }
    for (int b = 0; b <= used && b < k; ++b) {
      assignment[static_cast<std::size_t>(i)] = b;
      self(self, i + 1, std::max(used, b + 1));
    }
  };
  rec(rec, 0, 0);
  return count;
}

// Tallies permutations of [n] by cycle count via direct enumeration.
std::vector<long long> cycle_count_tally_oracle(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long long> tally(static_cast<std::size_t>(n) + 1, 0);
  do {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int cycles = 0;
    for (int start = 0; start < n; ++start) {
      if (seen[static_cast<std::size_t>(start)]) continue;
      ++cycles;
      int cur = start;
      while (!seen[static_cast<std::size_t>(cur)]) {
        seen[static_cast<std::size_t>(cur)] = 1;
        cur = perm[static_cast<std::size_t>(cur)];
      }
    }
    ++tally[static_cast<std::size_t>(cycles)];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return tally;
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(52, 26) == BigNat("495918532948104"));
  for (unsigned n = 1; n <= 12; ++n) {
    for (unsigned k = 1; k <= n; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("bell numbers against the recurrence oracle") {
  const std::vector<long long> expected = {
      1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975,
      678570, 4213597, 27644437, 190899322, 1382958545};
  for (std::size_t n = 0; n < expected.size(); ++n) {
    CHECK(bell(static_cast<unsigned>(n)) == expected[n]);
  }
  CHECK(bell(20) == 51724158235372LL);
  for (unsigned n = 1; n <= 24; ++n) CHECK(bell(n + 1) > bell(n));
}

TEST_CASE("stirling2 against set-partition enumeration") {
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(3, 5) == 0);
  for (unsigned n = 1; n <= 6; ++n) {
    CHECK(stirling2(n, 0) == 0);
    for (unsigned k = 1; k <= n; ++k) {
      CHECK(stirling2(n, k) ==
            partition_count_oracle(static_cast<int>(n), static_cast<int>(k)));
    }
  }
  for (unsigned n = 1; n <= 12; ++n) {
    BigNat row_sum = 0;
    for (unsigned k = 0; k <= n; ++k) {
      BigNat value = stirling2(n, k);
      bool positive_expected = 1 <= k && k <= n;
      CHECK((value > 0) == positive_expected);
      row_sum += value;
    }
    CHECK(row_sum == bell(n));
  }
}

TEST_CASE("stirling1 against cycle tallies of S_n") {
  CHECK(stirling1_unsigned(3, 3) == 1);
  CHECK(stirling1_unsigned(3, 1) == 2);
  CHECK(stirling1_unsigned(3, 2) == 3);
  for (int n = 1; n <= 6; ++n) {
    auto tally = cycle_count_tally_oracle(n);
    for (int k = 1; k <= n; ++k) {
      CHECK(stirling1_unsigned(static_cast<unsigned>(n),
                               static_cast<unsigned>(k)) ==
            tally[static_cast<std::size_t>(k)]);
    }
  }
  CHECK_THROWS_AS(stirling1_unsigned(3, 0), std::domain_error);
  CHECK_THROWS_AS(stirling1_unsigned(3, 4), std::domain_error);
}

TEST_CASE("factorials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(20) == BigNat("2432902008176640000"));
  CHECK(falling_factorial(BigRat(5), 0) == 1);
  CHECK(falling_factorial(BigRat(4), 2) == 12);
  CHECK(falling_factorial(BigRat(3), 5) == 0);
  CHECK(falling_factorial(rat(1, 2), 2) == rat(-1, 4));
  CHECK(rising_factorial(BigRat(2), 4) == 120);
  CHECK(rising_factorial(rat(1, 2), 0) == 1);
  CHECK(rising_factorial(rat(1, 2), 2) == rat(3, 4));
}

TEST_CASE("rising factorial polynomial") {
  CHECK(rising_factorial_poly(0) == Polynomial::constant(1));
  CHECK(rising_factorial_poly(2) ==
        Polynomial({BigRat(0), BigRat(1), BigRat(1)}));
  CHECK(rising_factorial_poly(3) ==
        Polynomial({BigRat(0), BigRat(2), BigRat(3), BigRat(1)}));
  for (unsigned n = 1; n <= 12; ++n) {
    Polynomial poly = rising_factorial_poly(n);
    CHECK(poly.degree() == static_cast<int>(n));
    for (unsigned k = 1; k <= n; ++k) {
      CHECK(poly.coefficient(k) == BigRat(stirling1_unsigned(n, k)));
    }
    CHECK(poly.evaluate(BigRat(2)) == rising_factorial(BigRat(2), n));
    CHECK(poly.evaluate(rat(5, 3)) == rising_factorial(rat(5, 3), n));
  }
}

TEST_CASE("touchard polynomials") {
  CHECK(touchard(0) == Polynomial::constant(1));
  CHECK(touchard(1) == Polynomial({BigRat(0), BigRat(1)}));
  CHECK(touchard(3) ==
        Polynomial({BigRat(0), BigRat(1), BigRat(3), BigRat(1)}));
  CHECK(touchard(2).evaluate(rat(1, 2)) == rat(3, 4));
  CHECK(touchard(3).evaluate(BigRat(2)) == 22);
  for (unsigned k = 0; k <= 15; ++k) {
    CHECK(touchard(k).evaluate(BigRat(1)) == BigRat(bell(k)));
  }
}

TEST_CASE("polynomial arithmetic") {
  Polynomial zero;
  CHECK(zero.degree() == -1);
  CHECK(Polynomial({BigRat(0), BigRat(0)}).degree() == -1);
  Polynomial p({BigRat(1), BigRat(2)});           // 1 + 2x
  Polynomial q({BigRat(0), BigRat(0), BigRat(3)});  // 3x^2
  CHECK((p * q) == Polynomial({BigRat(0), BigRat(0), BigRat(3), BigRat(6)}));
  CHECK((p + q).degree() == 2);
  CHECK((p * zero).degree() == -1);
  CHECK(p.evaluate(rat(1, 2)) == 2);
  CHECK(p.coefficient(5) == 0);
}

TEST_CASE("dobinski series evaluation") {
  CHECK(std::abs(static_cast<double>(dobinski(0, 1.0L, 1e-12L)) - 1.0) <=
        1e-12);
  CHECK(std::abs(static_cast<double>(dobinski(5, 1.0L, 1e-10L)) - 52.0) <=
        52.0 * 1e-9);
  CHECK(std::abs(static_cast<double>(dobinski(3, 2.0L, 1e-10L)) - 22.0) <=
        22.0 * 1e-9);
  for (unsigned n = 0; n <= 15; ++n) {
    double exact = bell(n).convert_to<double>();
    double approx = static_cast<double>(dobinski(n, 1.0L, 1e-10L));
    CHECK(std::abs(approx - exact) <= exact * 1e-9);
  }
  for (unsigned n = 0; n <= 10; ++n) {
    for (double x : {0.5, 2.0}) {
      double exact = touchard(n)
                         .evaluate(x == 0.5 ? rat(1, 2) : BigRat(2))
                         .convert_to<double>();
      double approx = static_cast<double>(
          dobinski(n, static_cast<long double>(x), 1e-10L));
      CHECK(std::abs(approx - exact) <= exact * 1e-9);
    }
  }
  CHECK_THROWS_AS(dobinski(3, 0.0L, 1e-10L), std::domain_error);
  CHECK_THROWS_AS(dobinski(3, -1.0L, 1e-10L), std::domain_error);
  CHECK_THROWS_AS(dobinski(3, 1.0L, 0.0L), std::domain_error);
}

TEST_CASE("bell EGF partial sum") {
  long double x = 0.5L;
  long double sum = 0.0L;
  long double weight = 1.0L;
  for (unsigned n = 0; n <= 25; ++n) {
    if (n > 0) weight *= x / n;
    sum += bell(n).convert_to<long double>() * weight;
  }
  long double target = std::exp(std::exp(x) - 1.0L);
  CHECK(std::fabs(sum - target) <= 1e-10L);
}

TEST_CASE("memo tables are safe under concurrent access") {
  std::vector<std::thread> workers;
  std::vector<BigNat> results(4);
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&results, t] {
      BigNat acc = bell(60 + t) + stirling2(40, 17) +
                   stirling1_unsigned(40, 17);
      results[static_cast<std::size_t>(t)] = acc;
    });
  }
  for (auto& w : workers) w.join();
  for (int t = 0; t < 4; ++t) {
    CHECK(results[static_cast<std::size_t>(t)] ==
          bell(60 + static_cast<unsigned>(t)) + stirling2(40, 17) +
              stirling1_unsigned(40, 17));
  }
}
