#include "permstat/perm.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "permstat/detail/bounded_partitions.hpp"
#include "permstat/exactcomb.hpp"

namespace permstat {

namespace {

BigRat rat_pow(const BigRat& base, int exponent) {
  BigRat result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

BigNat nat_pow(const BigNat& base, int exponent) {
  BigNat result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

void check_enumeration_size(int n) {
  if (n < 1) throw std::domain_error("permutation size must be positive");
  if (n > kMaxEnumerationN) {
    throw resource_error("full enumeration limited to n <= " +
                         std::to_string(kMaxEnumerationN));
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  int n = static_cast<int>(images_.size());
  if (n < 1) {
    throw std::invalid_argument("permutation must act on {1, ..., n}");
  }
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("images do not form a bijection");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

Permutation parse_cycle_notation(const std::string& text,
                                 std::optional<int> n) {
  std::size_t i = 0;
  auto skip_separators = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) ||
            text[i] == ',')) {
      ++i;
    }
  };

  std::vector<std::vector<int>> cycles;
  skip_separators();
  while (i < text.size()) {
    if (text[i] != '(') {
      throw std::invalid_argument("cycle notation: expected '('");
    }
    ++i;
    std::vector<int> cycle;
    skip_separators();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw std::invalid_argument("cycle notation: expected an element");
      }
      long v = 0;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        if (v > 1000000) {
          throw std::invalid_argument("cycle notation: element too large");
        }
        ++i;
      }
      if (v < 1) throw std::invalid_argument("cycle notation: elements are >= 1");
      cycle.push_back(static_cast<int>(v));
      skip_separators();
    }
    if (i >= text.size()) {
      throw std::invalid_argument("cycle notation: unterminated cycle");
    }
    ++i;  // ')'
    if (!cycle.empty()) cycles.push_back(std::move(cycle));
    skip_separators();
  }

  int max_element = 0;
  for (const auto& cycle : cycles) {
    for (int v : cycle) max_element = std::max(max_element, v);
  }
  if (n && *n < 1) throw std::domain_error("permutation size must be positive");
  if (!n && max_element == 0) {
    throw std::invalid_argument("cycle notation: cannot infer n from empty input");
  }
  int size = n ? *n : max_element;

  std::vector<char> seen(static_cast<std::size_t>(size) + 1, 0);
  for (const auto& cycle : cycles) {
    for (int v : cycle) {
      if (v > size) {
        throw std::invalid_argument("cycle notation: element exceeds n");
      }
      if (seen[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument("cycle notation: repeated element");
      }
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  if (!n) {
    for (int v = 1; v <= size; ++v) {
      if (!seen[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument(
            "cycle notation: every element of {1, ..., max} must appear "
            "unless n is given");
      }
    }
  }

  std::vector<int> images(static_cast<std::size_t>(size));
  std::iota(images.begin(), images.end(), 1);
  for (const auto& cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      int from = cycle[k];
      int to = cycle[(k + 1) % cycle.size()];
      images[static_cast<std::size_t>(from) - 1] = to;
    }
  }
  return Permutation(std::move(images));
}

CycleType::CycleType(std::vector<int> counts) : counts_(std::move(counts)) {
  long long total = 0;
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] < 0) {
      throw std::invalid_argument("cycle counts are nonnegative");
    }
    total += static_cast<long long>(j + 1) * counts_[j];
  }
  if (total != static_cast<long long>(counts_.size())) {
    throw std::invalid_argument("cycle counts must satisfy sum j*c_j = n");
  }
  n_ = static_cast<int>(counts_.size());
}

int CycleType::count_of(int length) const {
  if (length < 1) throw std::domain_error("cycle length must be positive");
  return length <= n_ ? counts_[static_cast<std::size_t>(length) - 1] : 0;
}

int CycleType::total_cycles() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

CycleType cycle_type(const Permutation& p) {
  int n = p.size();
  std::vector<int> counts(static_cast<std::size_t>(n), 0);
  std::vector<char> visited(static_cast<std::size_t>(n) + 1, 0);
  for (int start = 1; start <= n; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    int length = 0;
    int cur = start;
    do {
      visited[static_cast<std::size_t>(cur)] = 1;
      cur = p.image_of(cur);
      ++length;
    } while (cur != start);
    ++counts[static_cast<std::size_t>(length) - 1];
  }
  return CycleType(std::move(counts));
}

BigNat fixed_set_count(const CycleType& type, int m) {
  if (m < 0) throw std::domain_error("subset size must be nonnegative");
  if (m == 0) return 1;
  if (m > type.n()) return 0;
  std::vector<int> bounds(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    bounds[static_cast<std::size_t>(j) - 1] = type.count_of(j);
  }
  BigNat total = 0;
  detail::for_each_bounded_partition(m, bounds, [&](const std::vector<int>& l) {
    BigNat product = 1;
    for (int j = 1; j <= m; ++j) {
      int lj = l[static_cast<std::size_t>(j) - 1];
      if (lj > 0) {
        product *= binomial(static_cast<std::uint64_t>(type.count_of(j)),
                            static_cast<std::uint64_t>(lj));
      }
    }
    total += product;
  });
  return total;
}

BigNat fixed_set_count_direct(const Permutation& p, int m,
                              std::int64_t budget) {
  if (m < 0) throw std::domain_error("subset size must be nonnegative");
  if (m == 0) return 1;
  int n = p.size();
  if (m > n) return 0;
  if (binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)) >
      budget) {
    throw resource_error(
        "fixed_set_count_direct: C(n, m) exceeds the enumeration budget");
  }

  std::vector<int> combo(static_cast<std::size_t>(m));
  std::iota(combo.begin(), combo.end(), 1);
  std::vector<char> member(static_cast<std::size_t>(n) + 1, 0);
  BigNat total = 0;
  for (;;) {
    for (int a : combo) member[static_cast<std::size_t>(a)] = 1;
    bool fixed = true;
    for (int a : combo) {
      if (!member[static_cast<std::size_t>(p.image_of(a))]) {
        fixed = false;
        break;
      }
    }
    if (fixed) ++total;
    for (int a : combo) member[static_cast<std::size_t>(a)] = 0;

    int idx = m - 1;
    while (idx >= 0 && combo[static_cast<std::size_t>(idx)] == n - (m - 1 - idx)) {
      --idx;
    }
    if (idx < 0) break;
    ++combo[static_cast<std::size_t>(idx)];
    for (int t = idx + 1; t < m; ++t) {
      combo[static_cast<std::size_t>(t)] = combo[static_cast<std::size_t>(t) - 1] + 1;
    }
  }
  return total;
}

BigRat ewens_weight(const Permutation& p, const BigRat& theta) {
  if (theta <= 0) throw std::domain_error("Ewens parameter must be positive");
  int cycles = cycle_type(p).total_cycles();
  return rat_pow(theta, cycles) /
         rising_factorial(theta, static_cast<unsigned>(p.size()));
}

PermutationStream::PermutationStream(int n) {
  check_enumeration_size(n);
  current_.resize(static_cast<std::size_t>(n));
  std::iota(current_.begin(), current_.end(), 1);
}

std::optional<Permutation> PermutationStream::next() {
  if (done_) return std::nullopt;
  if (first_) {
    first_ = false;
    return Permutation(current_);
  }
  if (!std::next_permutation(current_.begin(), current_.end())) {
    done_ = true;
    return std::nullopt;
  }
  return Permutation(current_);
}

std::vector<BigRat> enumerated_cycle_moments(
    int n, const BigRat& theta,
    const std::vector<std::vector<MomentTerm>>& specs) {
  check_enumeration_size(n);
  if (theta <= 0) throw std::domain_error("Ewens parameter must be positive");
  for (const auto& spec : specs) {
    for (const auto& term : spec) {
      if (term.length < 1 || term.power < 1) {
        throw std::domain_error("moment terms need length >= 1 and power >= 1");
      }
    }
  }

  std::vector<BigRat> sums(specs.size(), BigRat(0));
  for_each_permutation(n, [&](const Permutation& p) {
    CycleType type = cycle_type(p);
    BigRat weight = rat_pow(theta, type.total_cycles());
    for (std::size_t s = 0; s < specs.size(); ++s) {
      BigNat stat = 1;
      for (const auto& term : specs[s]) {
        BigNat c = type.count_of(term.length);
        stat *= nat_pow(c, term.power);
        if (stat == 0) break;
      }
      if (stat != 0) sums[s] += weight * BigRat(stat);
    }
  });
  BigRat denom = rising_factorial(theta, static_cast<unsigned>(n));
  for (auto& v : sums) v /= denom;
  return sums;
}

BigRat enumerated_cycle_moment(int n, const BigRat& theta,
                               const std::vector<MomentTerm>& spec) {
  return enumerated_cycle_moments(n, theta, {spec})[0];
}

BigRat closed_cycle_moment(int n, const BigRat& theta, int m, int k) {
  if (m < 1 || k < 1) throw std::domain_error("need m >= 1 and k >= 1");
  if (theta <= 0) throw std::domain_error("Ewens parameter must be positive");
  if (n < m * k) {
    throw std::domain_error("closed cycle moment requires n >= m*k");
  }

  BigRat total = 0;
  BigNat m_factorial = factorial(static_cast<unsigned>(m));
  BigNat m1_factorial = factorial(static_cast<unsigned>(m - 1));
  BigRat denom = rising_factorial(theta, static_cast<unsigned>(n));
  for (int l = 1; l <= k; ++l) {
    // n! / ((m!)^l (n - lm)!) = (n)_{lm} / (m!)^l, an exact integer ratio.
    BigRat arrangements =
        BigRat(falling_factorial(BigRat(n), static_cast<unsigned>(l * m))) /
        BigRat(nat_pow(m_factorial, l));
    BigRat term = BigRat(stirling2(static_cast<unsigned>(k),
                                   static_cast<unsigned>(l))) *
                  arrangements * BigRat(nat_pow(m1_factorial, l)) *
                  rat_pow(theta, l) *
                  rising_factorial(theta, static_cast<unsigned>(n - l * m)) /
                  denom;
    total += term;
  }
  return total;
}

std::vector<BigRat> enumerated_fixed_set_moments(
    int n, const std::vector<std::pair<int, int>>& mk_pairs) {
  check_enumeration_size(n);
  for (const auto& [m, k] : mk_pairs) {
    if (m < 1 || k < 1) throw std::domain_error("need m >= 1 and k >= 1");
  }

  std::vector<BigNat> sums(mk_pairs.size(), BigNat(0));
  for_each_permutation(n, [&](const Permutation& p) {
    CycleType type = cycle_type(p);
    std::map<int, BigNat> by_m;
    for (std::size_t s = 0; s < mk_pairs.size(); ++s) {
      auto [m, k] = mk_pairs[s];
      auto it = by_m.find(m);
      if (it == by_m.end()) {
        it = by_m.emplace(m, fixed_set_count(type, m)).first;
      }
      sums[s] += nat_pow(it->second, k);
    }
  });
  BigRat denom = BigRat(factorial(static_cast<unsigned>(n)));
  std::vector<BigRat> out;
  out.reserve(sums.size());
  for (const auto& s : sums) out.push_back(BigRat(s) / denom);
  return out;
}

BigRat enumerated_fixed_set_moment(int n, int m, int k) {
  return enumerated_fixed_set_moments(n, {{m, k}})[0];
}

}  // namespace permstat
