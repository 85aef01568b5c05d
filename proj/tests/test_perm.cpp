#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "permstat/exactcomb.hpp"
#include "permstat/perm.hpp"

using namespace permstat;

namespace {

BigRat rat(long long num, long long den) { return BigRat(num) / BigRat(den); }

// Counts invariant m-subsets from scratch: a subset is invariant iff it is
// a union of whole cycles, so enumerate cycle subsets by bitmask.
BigNat invariant_subset_oracle(const Permutation& p, int m) {
  std::vector<int> cycle_lengths;
  std::vector<char> seen(static_cast<std::size_t>(p.size()) + 1, 0);
  for (int start = 1; start <= p.size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    int length = 0;
    int cur = start;
    while (!seen[static_cast<std::size_t>(cur)]) {
      seen[static_cast<std::size_t>(cur)] = 1;
      cur = p.image_of(cur);
      ++length;
    }
    cycle_lengths.push_back(length);
  }
  BigNat count = 0;
  auto k = cycle_lengths.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    int total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) total += cycle_lengths[i];
    }
    if (total == m) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("permutation construction and validation") {
  Permutation id = Permutation::identity(4);
  CHECK(id.size() == 4);
  CHECK(id.image_of(3) == 3);
  CHECK(Permutation({2, 1}).image_of(1) == 2);
  CHECK_THROWS_AS(Permutation({1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation({1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::identity(0), std::invalid_argument);
}

TEST_CASE("cycle notation parsing") {
  Permutation p = parse_cycle_notation("(3 7 9)(2 4)(1 6)(5)(8)", 9);
  CHECK(p.images() == std::vector<int>{6, 4, 7, 2, 5, 1, 9, 8, 3});
  CHECK(parse_cycle_notation("(1 2)(3)") == Permutation({2, 1, 3}));
  CHECK(parse_cycle_notation("(1,2)", 4) == Permutation({2, 1, 3, 4}));
  CHECK(parse_cycle_notation("", 3) == Permutation::identity(3));
  CHECK_THROWS_AS(parse_cycle_notation("(1 2)(2 3)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_notation("(1 3)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_notation("(1 5)", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_notation("(0 1)", 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycle_notation("(1 x)", 3), std::invalid_argument);
}

TEST_CASE("cycle type") {
  Permutation p = parse_cycle_notation("(3 7 9)(2 4)(1 6)(5)(8)", 9);
  CycleType type = cycle_type(p);
  CHECK(type.n() == 9);
  CHECK(type.counts() == std::vector<int>{2, 2, 1, 0, 0, 0, 0, 0, 0});
  CHECK(type.count_of(1) == 2);
  CHECK(type.count_of(3) == 1);
  CHECK(type.count_of(12) == 0);
  CHECK(type.total_cycles() == 5);
  CHECK(cycle_type(Permutation::identity(3)).counts() ==
        std::vector<int>{3, 0, 0});
  CHECK_THROWS_AS(CycleType({1, 1}), std::invalid_argument);
}

TEST_CASE("fixed set counts on a worked example") {
  Permutation p = parse_cycle_notation("(3 7 9)(2 4)(1 6)(5)(8)", 9);
  CycleType type = cycle_type(p);
  CHECK(fixed_set_count(type, 0) == 1);
  CHECK(fixed_set_count(type, 4) == 5);
  CHECK(fixed_set_count(type, 9) == 1);
  CHECK(fixed_set_count(type, 10) == 0);
  CHECK(fixed_set_count_direct(p, 4) == 5);
}

TEST_CASE("fixed set counts agree with both oracles over S_n") {
  for (int n = 1; n <= 6; ++n) {
    for_each_permutation(n, [&](const Permutation& p) {
      CycleType type = cycle_type(p);
      BigNat total = 0;
      for (int m = 0; m <= n + 1; ++m) {
        BigNat viaType = fixed_set_count(type, m);
        CHECK(viaType == fixed_set_count_direct(p, m));
        CHECK(viaType == invariant_subset_oracle(p, m));
        total += viaType;
      }
      BigNat expected_total = BigNat(1) << type.total_cycles();
      CHECK(total == expected_total);
    });
  }
}

TEST_CASE("fixed set count rejects oversized direct enumeration") {
  Permutation big = Permutation::identity(30);
  CHECK_THROWS_AS(fixed_set_count_direct(big, 15), resource_error);
  CHECK(fixed_set_count_direct(big, 1) == 30);
}

TEST_CASE("ewens weights") {
  CHECK(ewens_weight(Permutation::identity(2), BigRat(2)) == rat(2, 3));
  CHECK(ewens_weight(Permutation({2, 1}), BigRat(2)) == rat(1, 3));
  CHECK_THROWS_AS(ewens_weight(Permutation::identity(2), BigRat(0)),
                  std::domain_error);
  CHECK_THROWS_AS(ewens_weight(Permutation::identity(2), BigRat(-1)),
                  std::domain_error);
  for (int n = 1; n <= 6; ++n) {
    for (BigRat theta : {rat(1, 2), BigRat(1), BigRat(2), rat(7, 3)}) {
      BigRat total = 0;
      for_each_permutation(
          n, [&](const Permutation& p) { total += ewens_weight(p, theta); });
      CHECK(total == 1);
    }
  }
}

TEST_CASE("uniform cycle-count tallies match first-kind stirling numbers") {
  for (int n = 1; n <= 7; ++n) {
    std::map<int, BigNat> tally;
    for_each_permutation(n, [&](const Permutation& p) {
      tally[cycle_type(p).total_cycles()] += 1;
    });
    for (int k = 1; k <= n; ++k) {
      CHECK(tally[k] == stirling1_unsigned(static_cast<unsigned>(n),
                                           static_cast<unsigned>(k)));
    }
  }
}

TEST_CASE("permutation stream bounds") {
  int count = 0;
  std::set<std::vector<int>> distinct;
  for_each_permutation(4, [&](const Permutation& p) {
    ++count;
    distinct.insert(p.images());
  });
  CHECK(count == 24);
  CHECK(distinct.size() == 24);
  CHECK_THROWS_AS(PermutationStream(11), resource_error);
  CHECK_THROWS_AS(PermutationStream(0), std::domain_error);
}

TEST_CASE("enumerated cycle moments at frozen points") {
  CHECK(enumerated_cycle_moment(2, BigRat(1), {{1, 1}}) == 1);
  CHECK(enumerated_cycle_moment(2, BigRat(1), {{1, 2}}) == 2);
  CHECK(enumerated_cycle_moment(4, BigRat(1), {{1, 2}, {2, 1}}) == 1);
  CHECK(enumerated_cycle_moment(4, BigRat(1), {{2, 1}}) == rat(1, 2));
  CHECK(enumerated_cycle_moment(6, BigRat(2), {{2, 1}}) == rat(5, 7));
  auto batch = enumerated_cycle_moments(4, BigRat(1), {{{1, 2}, {2, 1}},
                                                       {{2, 1}}});
  REQUIRE(batch.size() == 2);
  CHECK(batch[0] == 1);
  CHECK(batch[1] == rat(1, 2));
}

TEST_CASE("closed cycle moment formula") {
  CHECK(closed_cycle_moment(4, BigRat(1), 2, 1) == rat(1, 2));
  CHECK(closed_cycle_moment(40, BigRat(2), 2, 1) == rat(39, 41));
  CHECK_THROWS_AS(closed_cycle_moment(3, BigRat(1), 2, 2), std::domain_error);
  CHECK_THROWS_AS(closed_cycle_moment(4, BigRat(0), 2, 1), std::domain_error);
  CHECK_THROWS_AS(closed_cycle_moment(4, BigRat(1), 0, 1), std::domain_error);
}

TEST_CASE("closed equals enumerated for every valid (m, k) up to n = 6") {
  for (int n = 1; n <= 6; ++n) {
    for (BigRat theta : {rat(1, 2), BigRat(1), BigRat(2)}) {
      for (int m = 1; m <= n; ++m) {
        for (int k = 1; m * k <= n; ++k) {
          CHECK(closed_cycle_moment(n, theta, m, k) ==
                enumerated_cycle_moment(n, theta, {{m, k}}));
        }
      }
    }
  }
}

TEST_CASE("uniform cycle moments evaluate touchard at 1/m") {
  for (int m = 1; m <= 3; ++m) {
    for (int k = 1; m * k <= 6; ++k) {
      BigRat expected =
          touchard(static_cast<unsigned>(k)).evaluate(BigRat(1) / m);
      for (int n = m * k; n <= 6; ++n) {
        CHECK(closed_cycle_moment(n, BigRat(1), m, k) == expected);
      }
    }
  }
}

TEST_CASE("enumerated fixed set moments at frozen points") {
  CHECK(enumerated_fixed_set_moment(4, 2, 1) == 1);
  CHECK(enumerated_fixed_set_moment(4, 2, 2) == 3);
  CHECK(enumerated_fixed_set_moment(6, 3, 2) == 4);
  CHECK(enumerated_fixed_set_moment(6, 2, 3) == 16);
  auto batch = enumerated_fixed_set_moments(6, {{3, 2}, {2, 3}});
  REQUIRE(batch.size() == 2);
  CHECK(batch[0] == 4);
  CHECK(batch[1] == 16);
}
