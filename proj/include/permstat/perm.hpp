#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permstat/types.hpp"

namespace permstat {

// Permutation of {1, ..., n} in one line notation: image_of(i) is where i
// is sent. Checked to be a bijection on construction.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int image_of(int i) const { return images_[static_cast<std::size_t>(i) - 1]; }
  const std::vector<int>& images() const { return images_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// Parses cycle notation such as "(3 7 9)(2 4)(1 6)(5)(8)". Elements are
// separated by whitespace or commas. When n is given, elements not listed
// are fixed points; otherwise every element of {1, ..., max} must appear.
Permutation parse_cycle_notation(const std::string& text,
                                 std::optional<int> n = std::nullopt);

// Cycle length multiplicities: count_of(j) is the number of j-cycles.
// Invariant: sum_j j * count_of(j) = n.
class CycleType {
 public:
  explicit CycleType(std::vector<int> counts);

  int n() const { return n_; }
  int count_of(int length) const;
  int total_cycles() const;
  const std::vector<int>& counts() const { return counts_; }

  bool operator==(const CycleType&) const = default;

 private:
  std::vector<int> counts_;  // counts_[j-1] = number of j-cycles
  int n_ = 0;
};

CycleType cycle_type(const Permutation& p);

// Number of m-element subsets mapped to themselves by any permutation of
// the given cycle type: sum over (l_1, ..., l_m) with sum_j j l_j = m and
// l_j <= c_j of prod_j C(c_j, l_j).
BigNat fixed_set_count(const CycleType& type, int m);

// The same count by direct enumeration of all m-subsets. Cross-validation
// route; refuses inputs with C(n, m) above the budget.
BigNat fixed_set_count_direct(const Permutation& p, int m,
                              std::int64_t budget = 10'000'000);

// Probability of p under the Ewens measure:
// theta^{#cycles} / (theta (theta+1) ... (theta+n-1)). Requires theta > 0.
BigRat ewens_weight(const Permutation& p, const BigRat& theta);

inline constexpr int kMaxEnumerationN = 10;

// Streams the permutations of {1, ..., n} in lexicographic order of one
// line notation. Refuses n > kMaxEnumerationN.
class PermutationStream {
 public:
  explicit PermutationStream(int n);
  std::optional<Permutation> next();

 private:
  std::vector<int> current_;
  bool first_ = true;
  bool done_ = false;
};

template <typename F>
void for_each_permutation(int n, F&& visit) {
  PermutationStream stream(n);
  while (auto p = stream.next()) visit(*p);
}

// One factor of a joint cycle count moment: C_{length} ^ power.
struct MomentTerm {
  int length = 1;
  int power = 1;
};

// E[ prod_i C_{m_i}^{k_i} ] under Ewens(theta) on S_n by full enumeration,
// one result per spec, computed exactly in a single sweep.
std::vector<BigRat> enumerated_cycle_moments(
    int n, const BigRat& theta,
    const std::vector<std::vector<MomentTerm>>& specs);
BigRat enumerated_cycle_moment(int n, const BigRat& theta,
                               const std::vector<MomentTerm>& spec);

// E[C_m^k] under Ewens(theta) on S_n from the closed form
//   sum_{l=1}^{k} {k l} n! / ((m!)^l (n-lm)!) ((m-1)!)^l
//                 theta^l theta^{(n-lm)} / theta^{(n)},
// valid (and enforced) for n >= m k.
BigRat closed_cycle_moment(int n, const BigRat& theta, int m, int k);

// E[(E_m)^k] under the uniform measure on S_n by full enumeration with
// fixed_set_count, one result per (m, k) pair.
std::vector<BigRat> enumerated_fixed_set_moments(
    int n, const std::vector<std::pair<int, int>>& mk_pairs);
BigRat enumerated_fixed_set_moment(int n, int m, int k);

}  // namespace permstat
