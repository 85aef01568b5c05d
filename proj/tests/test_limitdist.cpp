#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "permstat/covers.hpp"
#include "permstat/exactcomb.hpp"
#include "permstat/limitdist.hpp"

using namespace permstat;

TEST_CASE("truncated law is a near-probability-distribution") {
  for (int m = 1; m <= 4; ++m) {
    TruncatedDistribution dist = limit_distribution(m, 1e-8);
    CHECK(dist.mass_captured <= 1.0 + 1e-12);
    CHECK(dist.mass_captured >= 1.0 - 1e-8);
    CHECK(dist.epsilon == 1e-8);
    REQUIRE(!dist.support.empty());
    CHECK(dist.support.front().first == 0);
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
      CHECK(dist.support[i].second > 0.0);
      if (i > 0) CHECK(dist.support[i - 1].first < dist.support[i].first);
    }
  }
}

TEST_CASE("order one reduces to poisson(1)") {
  TruncatedDistribution dist = limit_distribution(1, 1e-8);
  double factorial_u = 1.0;
  for (std::size_t u = 0; u < dist.support.size(); ++u) {
    if (u > 0) factorial_u *= static_cast<double>(u);
    CHECK(dist.support[u].first == u);
    CHECK(dist.support[u].second ==
          doctest::Approx(std::exp(-1.0) / factorial_u).epsilon(1e-9));
  }
  CHECK(distribution_moment(dist, 1) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(distribution_moment(dist, 2) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("zero mass of the order two law") {
  TruncatedDistribution dist = limit_distribution(2, 1e-8);
  double expected = 2.0 * std::exp(-1.5);
  CHECK(dist.support.front().second ==
        doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("truncated moments reproduce the cover counts") {
  for (int m = 1; m <= 4; ++m) {
    TruncatedDistribution dist = limit_distribution(m, 1e-8);
    CHECK(std::abs(distribution_moment(dist, 0) - 1.0) <= 1e-6);
    for (int k = 1; k <= 3; ++k) {
      double expected = count_covers(k, m).convert_to<double>();
      double got = distribution_moment(dist, k);
      CHECK(std::abs(got - expected) <= 1e-6 * expected);
    }
    double mean = distribution_moment(dist, 1);
    double second = distribution_moment(dist, 2);
    CHECK(std::abs(mean - 1.0) <= 1e-6);
    CHECK(std::abs(second - (m + 1)) <= 1e-6);
    CHECK(std::abs(second - mean * mean - m) <= 1e-5);
  }
}

TEST_CASE("limit distribution guards") {
  CHECK_THROWS_AS(limit_distribution(0, 1e-8), std::domain_error);
  CHECK_THROWS_AS(limit_distribution(13, 1e-8), resource_error);
  CHECK_THROWS_AS(limit_distribution(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(limit_distribution(2, 0.2), std::domain_error);
  CHECK_THROWS_AS(limit_distribution(2, 1e-8, -1), std::domain_error);
  CHECK_THROWS_AS(limit_distribution(4, 1e-8, 3, 10), resource_error);
  CHECK_THROWS_AS(distribution_moment(limit_distribution(1, 1e-4), -1),
                  std::domain_error);
}

TEST_CASE("positivity probability brackets") {
  auto [lo1, hi1] = prob_positive(1, 1e-6);
  double exact1 = 1.0 - std::exp(-1.0);
  CHECK(lo1 <= exact1 + 1e-12);
  CHECK(hi1 >= exact1 - 1e-12);
  CHECK(hi1 - lo1 <= 1e-6);

  auto [lo2, hi2] = prob_positive(2, 1e-6);
  double exact2 = 1.0 - 2.0 * std::exp(-1.5);
  CHECK(lo2 <= exact2 + 1e-12);
  CHECK(hi2 >= exact2 - 1e-12);
  CHECK(hi2 - lo2 <= 1e-6);

  for (int m = 3; m <= 4; ++m) {
    auto [lo, hi] = prob_positive(m, 1e-3);
    CHECK(0.0 <= lo);
    CHECK(lo <= hi);
    CHECK(hi <= 1.0);
    CHECK(hi - lo <= 1e-3);
  }
}

TEST_CASE("order one expectation has closed form e^{e^x - 1}") {
  for (double x : {-1.0, -0.25, 0.0, 0.5, 1.0}) {
    EgfValue v = cover_egf(1, x, 1e-10);
    double exact = std::exp(std::exp(x) - 1.0);
    CHECK(std::abs(v.value - exact) <= v.truncation_bound + 1e-12);
    CHECK(v.truncation_bound <= 1e-9);
    CHECK(v.x == x);
  }
}

TEST_CASE("box evaluation matches the closed forms") {
  for (double x : {-1.0, -0.5, 0.0}) {
    CHECK(std::abs(cover_egf(2, x, 1e-10).value - cover_egf_closed(2, x)) <
          1e-9);
    CHECK(std::abs(cover_egf(3, x, 1e-9).value - cover_egf_closed(3, x)) <
          1e-8);
  }
  CHECK(cover_egf_closed(2, -1.0) ==
        doctest::Approx(0.587963590502).epsilon(1e-9));
  CHECK(cover_egf_closed(2, -0.5) ==
        doctest::Approx(0.707880759722).epsilon(1e-9));
  CHECK(cover_egf_closed(3, -1.0) ==
        doctest::Approx(0.623419322196).epsilon(1e-9));
  CHECK(cover_egf_closed(3, -0.5) ==
        doctest::Approx(0.728618104909).epsilon(1e-9));
}

TEST_CASE("expectation at zero is one for all supported orders") {
  for (int m = 1; m <= 4; ++m) {
    EgfValue v = cover_egf(m, 0.0, 1e-8);
    CHECK(std::abs(v.value - 1.0) <= 1e-8);
  }
  for (int m = 5; m <= 8; ++m) {
    EgfValue v = cover_egf(m, 0.0, 0.01);
    CHECK(std::abs(v.value - 1.0) <= 0.01);
  }
}

TEST_CASE("taylor coefficients are cover counts over factorials") {
  auto coeffs = cover_egf_coefficients(2, 5);
  REQUIRE(coeffs.size() == 5);
  CHECK(coeffs[0] == 1);
  CHECK(coeffs[1] == BigRat(3) / 2);
  CHECK(coeffs[2] == BigRat(16) / 6);
  for (int m = 1; m <= 3; ++m) {
    auto c = cover_egf_coefficients(m, 6);
    for (int k = 1; k <= 6; ++k) {
      CHECK(c[static_cast<std::size_t>(k) - 1] ==
            BigRat(count_covers(k, m)) / BigRat(factorial(
                static_cast<unsigned>(k))));
    }
  }
}

// For x <= 0 the exponential remainder obeys
// |e^y - sum_{k<=K} y^k/k!| <= |y|^{K+1}/(K+1)!, so truncating the moment
// expansion after K terms costs at most v_{K+1} |x|^{K+1} / (K+1)!.
TEST_CASE("expectation matches its own taylor expansion") {
  const int K = 8;
  struct Point {
    int m;
    double x;
    double eps;
  };
  for (Point pt : {Point{2, -0.05, 1e-10}, Point{3, -0.05, 1e-9}}) {
    EgfValue v = cover_egf(pt.m, pt.x, pt.eps);
    auto coeffs = cover_egf_coefficients(pt.m, K + 1);
    double partial = 1.0;
    double x_pow = 1.0;
    for (int k = 1; k <= K; ++k) {
      x_pow *= pt.x;
      partial += coeffs[static_cast<std::size_t>(k) - 1].convert_to<double>() *
                 x_pow;
    }
    double remainder =
        coeffs[K].convert_to<double>() * std::pow(std::abs(pt.x), K + 1);
    CHECK(std::abs(v.value - partial) <=
          remainder + v.truncation_bound + 1e-9);
  }
}

TEST_CASE("expectation domain is enforced where tails are certifiable") {
  CHECK_THROWS_AS(cover_egf(2, 0.1, 1e-8), std::domain_error);
  CHECK_THROWS_AS(cover_egf(3, 0.2, 1e-8), std::domain_error);
  CHECK_THROWS_AS(cover_egf(1, 1.1, 1e-8), std::domain_error);
  CHECK_THROWS_AS(cover_egf(0, 0.0, 1e-8), std::domain_error);
  CHECK_THROWS_AS(cover_egf(2, -1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(cover_egf_closed(4, -1.0), std::domain_error);
  CHECK_THROWS_AS(cover_egf_closed(2, 0.5), std::domain_error);
  CHECK_THROWS_AS(cover_egf_coefficients(2, 0), std::domain_error);
}
