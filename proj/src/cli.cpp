#include "permstat/cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "permstat/covers.hpp"
#include "permstat/ewens.hpp"
#include "permstat/exactcomb.hpp"
#include "permstat/limitdist.hpp"
#include "permstat/perm.hpp"
#include "permstat/report.hpp"
#include "permstat/rng.hpp"

namespace permstat {

namespace {

BigRat parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  try {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      BigNat num(s.substr(0, slash));
      BigNat den(s.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator: " + text);
      return BigRat(num) / BigRat(den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      BigNat num(digits);
      BigNat den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      return BigRat(num) / BigRat(den);
    }
    return BigRat(BigNat(s));
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse rational: " + text);
  }
}

std::vector<MomentTerm> parse_moment_spec(const std::string& text) {
  std::vector<MomentTerm> spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("moment spec entries look like m:k");
    }
    try {
      MomentTerm term;
      term.length = std::stoi(item.substr(0, colon));
      term.power = std::stoi(item.substr(colon + 1));
      spec.push_back(term);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("cannot parse moment spec: " + text);
    }
  }
  if (spec.empty()) throw std::invalid_argument("empty moment spec");
  return spec;
}

UVector parse_int_list(const std::string& text) {
  UVector values;
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::stringstream ss(normalized);
  int v = 0;
  while (ss >> v) values.push_back(v);
  if (!ss.eof()) throw std::invalid_argument("cannot parse integer list: " + text);
  return values;
}

nlohmann::json rat_array(const std::vector<BigRat>& values) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& v : values) arr.push_back(rat_to_json(v));
  return arr;
}

// Aggregates a family of related cases into one report check; on failure
// the check records the count and the first offending case.
class CheckFamily {
 public:
  CheckFamily(Report& report, std::string name, nlohmann::json tolerance)
      : report_(report), name_(std::move(name)),
        tolerance_(std::move(tolerance)) {}

  void expect(const std::string& label, bool ok, nlohmann::json lhs,
              nlohmann::json rhs) {
    ++cases_;
    if (!ok && failures_++ == 0) {
      first_failure_ = {{"case", label}, {"lhs", std::move(lhs)},
                        {"rhs", std::move(rhs)}};
    }
  }

  void expect_exact(const std::string& label, const BigRat& lhs,
                    const BigRat& rhs) {
    expect(label, lhs == rhs, rat_to_json(lhs), rat_to_json(rhs));
  }

  void expect_exact(const std::string& label, const BigNat& lhs,
                    const BigNat& rhs) {
    expect(label, lhs == rhs, nat_to_string(lhs), nat_to_string(rhs));
  }

  void expect_close(const std::string& label, double lhs, double rhs,
                    double tol) {
    expect(label, std::abs(lhs - rhs) <= tol, lhs, rhs);
  }

  ~CheckFamily() {
    Check check;
    check.name = std::move(name_);
    check.passed = failures_ == 0;
    check.lhs = {{"cases", cases_}, {"failures", failures_}};
    check.rhs = first_failure_;
    check.tolerance = std::move(tolerance_);
    report_.checks.push_back(std::move(check));
  }

 private:
  Report& report_;
  std::string name_;
  nlohmann::json tolerance_;
  nlohmann::json first_failure_;
  int cases_ = 0;
  int failures_ = 0;
};

void run_identities_suite(Report& report) {
  {
    CheckFamily family(report, "touchard_at_1_equals_bell_k<=15", "exact");
    for (unsigned k = 0; k <= 15; ++k) {
      family.expect_exact("k=" + std::to_string(k),
                          BigRat(touchard(k).evaluate(1)), BigRat(bell(k)));
    }
  }
  {
    CheckFamily family(report, "stirling2_falling_factorial_expansion", "exact");
    for (unsigned n = 0; n <= 10; ++n) {
      for (int x = 0; x <= 10; ++x) {
        BigRat sum = 0;
        for (unsigned j = 0; j <= n; ++j) {
          sum += BigRat(stirling2(n, j)) * falling_factorial(BigRat(x), j);
        }
        BigRat power = 1;
        for (unsigned i = 0; i < n; ++i) power *= x;
        family.expect_exact("n=" + std::to_string(n) + ",x=" + std::to_string(x),
                            sum, power);
      }
    }
  }
  {
    CheckFamily family(report, "rising_factorial_coeffs_are_stirling1", "exact");
    for (unsigned n = 1; n <= 12; ++n) {
      Polynomial poly = rising_factorial_poly(n);
      for (unsigned k = 1; k <= n; ++k) {
        family.expect_exact("n=" + std::to_string(n) + ",k=" + std::to_string(k),
                            poly.coefficient(k), BigRat(stirling1_unsigned(n, k)));
      }
      family.expect("n=" + std::to_string(n) + ",k=0",
                    poly.coefficient(0) == 0, rat_to_json(poly.coefficient(0)),
                    rat_to_json(BigRat(0)));
    }
  }
  {
    CheckFamily family(report, "stirling1_generating_identity", "exact");
    const std::vector<BigRat> thetas = {BigRat(1), BigRat(2), BigRat(5) / 3};
    for (unsigned n = 1; n <= 10; ++n) {
      for (const auto& theta : thetas) {
        BigRat sum = 0;
        BigRat theta_pow = 1;
        for (unsigned k = 1; k <= n; ++k) {
          theta_pow *= theta;
          sum += BigRat(stirling1_unsigned(n, k)) * theta_pow;
        }
        family.expect_exact("n=" + std::to_string(n), sum,
                            rising_factorial(theta, n));
      }
    }
  }
  {
    CheckFamily family(report, "dobinski_matches_bell_n<=15", 1e-9);
    for (unsigned n = 0; n <= 15; ++n) {
      double lhs = static_cast<double>(dobinski(n, 1.0L, 1e-10L));
      double rhs = bell(n).convert_to<double>();
      family.expect_close("n=" + std::to_string(n), lhs / rhs, 1.0, 1e-9);
    }
  }
  {
    CheckFamily family(report, "dobinski_matches_touchard_n<=10", 1e-9);
    const std::vector<std::pair<double, BigRat>> points = {
        {0.5, BigRat(1) / 2}, {2.0, BigRat(2)}};
    for (unsigned n = 0; n <= 10; ++n) {
      for (const auto& [x, xq] : points) {
        double lhs = static_cast<double>(
            dobinski(n, static_cast<long double>(x), 1e-10L));
        double rhs = touchard(n).evaluate(xq).convert_to<double>();
        family.expect_close(
            "n=" + std::to_string(n) + ",x=" + std::to_string(x),
            lhs / rhs, 1.0, 1e-9);
      }
    }
  }
  {
    long double x = 0.5L;
    long double sum = 0.0L;
    long double x_pow_over_fact = 1.0L;
    for (unsigned n = 0; n <= 25; ++n) {
      if (n > 0) x_pow_over_fact *= x / n;
      sum += bell(n).convert_to<long double>() * x_pow_over_fact;
    }
    long double target = std::exp(std::exp(x) - 1.0L);
    Check check;
    check.name = "bell_egf_partial_sum_K=25_x=0.5";
    check.passed = std::fabs(sum - target) <= 1e-10L;
    check.lhs = static_cast<double>(sum);
    check.rhs = static_cast<double>(target);
    check.tolerance = 1e-10;
    report.checks.push_back(std::move(check));
  }
}

void run_theorem_c_suite(Report& report, std::uint64_t seed,
                         std::int64_t replicates) {
  {
    CheckFamily family(report, "uniform_cycle_moments_match_touchard", "exact");
    for (int n = 1; n <= 7; ++n) {
      std::vector<std::vector<MomentTerm>> specs;
      std::vector<std::pair<int, int>> labels;
      for (int m = 1; m <= n; ++m) {
        for (int k = 1; m * k <= n; ++k) {
          specs.push_back({MomentTerm{m, k}});
          labels.emplace_back(m, k);
        }
      }
      auto moments = enumerated_cycle_moments(n, BigRat(1), specs);
      for (std::size_t i = 0; i < specs.size(); ++i) {
        auto [m, k] = labels[i];
        BigRat expected =
            touchard(static_cast<unsigned>(k)).evaluate(BigRat(1) / m);
        family.expect_exact("n=" + std::to_string(n) + ",m=" +
                                std::to_string(m) + ",k=" + std::to_string(k),
                            moments[i], expected);
      }
    }
  }
  {
    CheckFamily family(report, "joint_cycle_moments_factorize", "exact");
    const std::vector<std::array<int, 4>> tuples = {
        {1, 1, 2, 1}, {1, 2, 2, 1}, {1, 1, 3, 1}, {2, 1, 3, 1}};
    for (int n = 1; n <= 7; ++n) {
      std::vector<std::vector<MomentTerm>> specs;
      std::vector<std::array<int, 4>> used;
      for (const auto& t : tuples) {
        if (t[0] * t[1] + t[2] * t[3] <= n) {
          specs.push_back({MomentTerm{t[0], t[1]}, MomentTerm{t[2], t[3]}});
          used.push_back(t);
        }
      }
      if (specs.empty()) continue;
      auto moments = enumerated_cycle_moments(n, BigRat(1), specs);
      for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& t = used[i];
        BigRat expected =
            touchard(static_cast<unsigned>(t[1])).evaluate(BigRat(1) / t[0]) *
            touchard(static_cast<unsigned>(t[3])).evaluate(BigRat(1) / t[2]);
        family.expect_exact(
            "n=" + std::to_string(n) + ",(" + std::to_string(t[0]) + "," +
                std::to_string(t[1]) + ")x(" + std::to_string(t[2]) + "," +
                std::to_string(t[3]) + ")",
            moments[i], expected);
      }
    }
  }
  {
    CheckFamily family(report, "closed_form_matches_enumeration", "exact");
    const std::vector<BigRat> thetas = {BigRat(1) / 2, BigRat(1), BigRat(2)};
    for (int n = 1; n <= 7; ++n) {
      for (const auto& theta : thetas) {
        std::vector<std::vector<MomentTerm>> specs;
        std::vector<std::pair<int, int>> labels;
        for (int m = 1; m <= n; ++m) {
          for (int k = 1; m * k <= n; ++k) {
            specs.push_back({MomentTerm{m, k}});
            labels.emplace_back(m, k);
          }
        }
        auto moments = enumerated_cycle_moments(n, theta, specs);
        for (std::size_t i = 0; i < specs.size(); ++i) {
          auto [m, k] = labels[i];
          family.expect_exact("n=" + std::to_string(n) + ",m=" +
                                  std::to_string(m) + ",k=" + std::to_string(k),
                              closed_cycle_moment(n, theta, m, k), moments[i]);
        }
      }
    }
  }
  {
    // E[C_2] at theta=2 approaches T_1(1) = 1 from below as n grows.
    CheckFamily family(report, "closed_form_gap_shrinks_to_limit", "exact");
    BigRat limit = 1;
    BigRat previous_gap;
    bool have_previous = false;
    BigRat final_gap;
    for (int n = 4; n <= 40; ++n) {
      BigRat value = closed_cycle_moment(n, BigRat(2), 2, 1);
      BigRat gap = value > limit ? value - limit : limit - value;
      if (have_previous) {
        family.expect("n=" + std::to_string(n), gap < previous_gap,
                      rat_to_json(gap), rat_to_json(previous_gap));
      }
      previous_gap = gap;
      have_previous = true;
      final_gap = gap;
    }
    family.expect("final_gap<0.05", final_gap < BigRat(1) / 20,
                  rat_to_json(final_gap), rat_to_json(BigRat(1) / 20));
  }
  {
    CheckFamily family(report, "mc_mean_c1_matches_limit", "4 stderr");
    SamplerConfig config{1000, 1.0, seed, replicates};
    McMoment result = mc_moment(config, {MomentTerm{1, 1}});
    family.expect_close("n=1000,theta=1", result.estimate, 1.0,
                        4.0 * result.standard_error);
  }
  {
    CheckFamily family(report, "mc_joint_c1_c2_matches_product", "4 stderr");
    SamplerConfig config{500, 1.0, seed + 1, replicates};
    McMoment result = mc_moment(config, {MomentTerm{1, 1}, MomentTerm{2, 1}});
    family.expect_close("n=500,theta=1", result.estimate, 0.5,
                        4.0 * result.standard_error);
  }
}

void run_theorem1_suite(Report& report) {
  {
    CheckFamily family(report, "covers_order1_column_is_bell", "exact");
    for (int k = 1; k <= 10; ++k) {
      family.expect_exact("k=" + std::to_string(k), count_covers(k, 1),
                          bell(static_cast<unsigned>(k)));
    }
  }
  {
    CheckFamily family(report, "covers_two_point_row_is_m_plus_1", "exact");
    for (int m = 1; m <= 20; ++m) {
      family.expect_exact("m=" + std::to_string(m), count_covers(2, m),
                          BigNat(m + 1));
    }
  }
  {
    CheckFamily family(report, "covers_dp_matches_bruteforce", "exact");
    for (int k = 1; k <= 3; ++k) {
      for (int m = 1; m <= 4; ++m) {
        family.expect_exact("k=" + std::to_string(k) + ",m=" + std::to_string(m),
                            count_covers(k, m), count_covers_bruteforce(k, m));
      }
    }
  }
  {
    CheckFamily family(report, "uniform_fixed_set_moments_match_covers",
                       "exact");
    const std::vector<std::pair<int, int>> pairs = {
        {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {4, 1}};
    for (int n = 2; n <= 7; ++n) {
      std::vector<std::pair<int, int>> valid;
      for (auto [m, k] : pairs) {
        if (m * k <= n) valid.emplace_back(m, k);
      }
      if (valid.empty()) continue;
      auto moments = enumerated_fixed_set_moments(n, valid);
      for (std::size_t i = 0; i < valid.size(); ++i) {
        auto [m, k] = valid[i];
        family.expect_exact("n=" + std::to_string(n) + ",m=" +
                                std::to_string(m) + ",k=" + std::to_string(k),
                            moments[i], BigRat(count_covers(k, m)));
      }
    }
  }
}

void run_theorem2_suite(Report& report, std::uint64_t seed) {
  {
    CheckFamily family(report, "gamma_routes_agree_randomized", "exact");
    SplitMix64 gen(seed);
    for (int trial = 0; trial < 200; ++trial) {
      int m = 1 + static_cast<int>(gen.next_below(8));
      UVector u(static_cast<std::size_t>(m));
      for (auto& v : u) v = static_cast<int>(gen.next_below(6));
      family.expect_exact("trial=" + std::to_string(trial),
                          gamma_coefficient(m, u), gamma_binomial_sum(m, u));
    }
  }
  {
    CheckFamily family(report, "gamma_closed_forms_small_m", "exact");
    for (int u1 = 0; u1 <= 4; ++u1) {
      family.expect_exact("m=1,u=(" + std::to_string(u1) + ")",
                          gamma_coefficient(1, {u1}), BigNat(u1));
      for (int u2 = 0; u2 <= 4; ++u2) {
        BigNat expected2 = binomial(static_cast<std::uint64_t>(u1), 2) + u2;
        family.expect_exact("m=2,u=(" + std::to_string(u1) + "," +
                                std::to_string(u2) + ")",
                            gamma_coefficient(2, {u1, u2}), expected2);
        for (int u3 = 0; u3 <= 4; ++u3) {
          BigNat expected3 = binomial(static_cast<std::uint64_t>(u1), 3) +
                             BigNat(u1) * u2 + u3;
          family.expect_exact("m=3,u=(" + std::to_string(u1) + "," +
                                  std::to_string(u2) + "," +
                                  std::to_string(u3) + ")",
                              gamma_coefficient(3, {u1, u2, u3}), expected3);
        }
      }
    }
  }
  {
    CheckFamily family(report, "gamma_vanishes_below_reach", "exact");
    for (int m = 1; m <= 6; ++m) {
      UVector zeros(static_cast<std::size_t>(m), 0);
      family.expect_exact("zero_vector_m=" + std::to_string(m),
                          gamma_coefficient(m, zeros), BigNat(0));
    }
    family.expect_exact("m=4,u=(1,1,0,0)", gamma_coefficient(4, {1, 1, 0, 0}),
                        BigNat(0));
    family.expect_exact("m=4,u=(0,1,0,0)", gamma_coefficient(4, {0, 1, 0, 0}),
                        BigNat(0));
    family.expect_exact("m=4,u=(2,1,0,0)", gamma_coefficient(4, {2, 1, 0, 0}),
                        BigNat(1));
  }
  {
    CheckFamily family(report, "egf_matches_closed_form_m=2", 1e-9);
    for (double x : {-1.0, -0.5, 0.0}) {
      EgfValue lhs = cover_egf(2, x, 1e-10);
      double rhs = cover_egf_closed(2, x);
      family.expect_close("x=" + std::to_string(x), lhs.value, rhs, 1e-9);
    }
  }
  {
    CheckFamily family(report, "egf_matches_closed_form_m=3", 1e-8);
    for (double x : {-1.0, -0.5, 0.0}) {
      EgfValue lhs = cover_egf(3, x, 1e-9);
      double rhs = cover_egf_closed(3, x);
      family.expect_close("x=" + std::to_string(x), lhs.value, rhs, 1e-8);
    }
  }
  {
    CheckFamily family(report, "limit_moments_match_covers", 1e-6);
    for (int m = 1; m <= 4; ++m) {
      TruncatedDistribution dist = limit_distribution(m, 1e-8);
      for (int k = 1; k <= 3; ++k) {
        double expected = count_covers(k, m).convert_to<double>();
        family.expect_close(
            "m=" + std::to_string(m) + ",k=" + std::to_string(k),
            distribution_moment(dist, k) / expected, 1.0, 1e-6);
      }
      double variance = distribution_moment(dist, 2) -
                        distribution_moment(dist, 1) * distribution_moment(dist, 1);
      family.expect_close("variance_m=" + std::to_string(m), variance,
                          static_cast<double>(m), 1e-6);
    }
  }
  {
    CheckFamily family(report, "egf_at_zero_is_one", "epsilon");
    for (int m = 1; m <= 4; ++m) {
      EgfValue value = cover_egf(m, 0.0, 1e-8);
      family.expect_close("m=" + std::to_string(m), value.value, 1.0, 1e-8);
    }
    for (int m = 5; m <= 8; ++m) {
      EgfValue value = cover_egf(m, 0.0, 0.01);
      family.expect_close("m=" + std::to_string(m), value.value, 1.0, 0.01);
    }
  }
  {
    CheckFamily family(report, "positive_probability_bracket", "epsilon width");
    for (int m = 1; m <= 4; ++m) {
      auto [lower, upper] = prob_positive(m, 0.01);
      family.expect("width_m=" + std::to_string(m),
                    lower <= upper && upper - lower <= 0.01, lower, upper);
    }
    auto [lower1, upper1] = prob_positive(1, 0.001);
    double exact1 = 1.0 - std::exp(-1.0);
    family.expect("m=1_contains_1-1/e", lower1 <= exact1 && exact1 <= upper1,
                  lower1, upper1);
    auto [lower2, upper2] = prob_positive(2, 0.001);
    double exact2 = 1.0 - 2.0 * std::exp(-1.5);
    family.expect("m=2_contains_exact", lower2 <= exact2 && exact2 <= upper2,
                  lower2, upper2);
  }
}

struct CliOptions {
  std::string format = "json";
  std::uint64_t seed = 20260825;
  double eps = 1e-6;
  std::int64_t budget = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact and Monte Carlo toolkit for cycle counts of random "
               "permutations, fixed-set statistics, and cover counts"};
  app.name("permstat");
  app.require_subcommand(1);

  CliOptions options;
  app.add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", options.seed, "Seed for randomized checks and MC");
  app.add_option("--eps", options.eps, "Truncation mass bound for limit ops");
  app.add_option("--budget", options.budget,
                 "Override enumeration/state budgets (0 = defaults)");

  // bell
  auto* bell_cmd = app.add_subcommand("bell", "Bell number B_n");
  unsigned bell_n = 0;
  bell_cmd->add_option("--n", bell_n, "Index n")->required();

  // stirling2
  auto* s2_cmd =
      app.add_subcommand("stirling2", "Stirling number of the second kind");
  unsigned s2_n = 0, s2_k = 0;
  s2_cmd->add_option("--n", s2_n)->required();
  s2_cmd->add_option("--k", s2_k)->required();

  // stirling1
  auto* s1_cmd = app.add_subcommand(
      "stirling1", "Unsigned Stirling number of the first kind");
  unsigned s1_n = 0, s1_k = 0;
  s1_cmd->add_option("--n", s1_n)->required();
  s1_cmd->add_option("--k", s1_k)->required();

  // touchard
  auto* touchard_cmd =
      app.add_subcommand("touchard", "Touchard polynomial T_k");
  unsigned touchard_k = 0;
  std::string touchard_x;
  touchard_cmd->add_option("--k", touchard_k)->required();
  touchard_cmd->add_option("--x", touchard_x,
                           "Optional rational evaluation point");

  // dobinski
  auto* dobinski_cmd = app.add_subcommand(
      "dobinski", "Truncated Poisson-moment series for T_n(x)");
  unsigned dobinski_n = 0;
  double dobinski_x = 1.0;
  double dobinski_rel_tol = 1e-10;
  dobinski_cmd->add_option("--n", dobinski_n)->required();
  dobinski_cmd->add_option("--x", dobinski_x);
  dobinski_cmd->add_option("--rel-tol", dobinski_rel_tol);

  // covers
  auto* covers_cmd =
      app.add_subcommand("covers", "Number of m-covers of {1..k}");
  int covers_k = 1, covers_m = 1;
  bool covers_oracle = false;
  covers_cmd->add_option("--k", covers_k)->required();
  covers_cmd->add_option("--m", covers_m)->required();
  covers_cmd->add_flag("--oracle", covers_oracle,
                       "Use the brute-force enumeration route");

  // gamma
  auto* gamma_cmd = app.add_subcommand(
      "gamma", "Coefficient of z^m in prod (1+z^j)^{u_j}");
  int gamma_m = 1;
  std::string gamma_u;
  bool gamma_oracle = false;
  gamma_cmd->add_option("--m", gamma_m)->required();
  gamma_cmd->add_option("--u", gamma_u, "Comma-separated u_1..u_m")->required();
  gamma_cmd->add_flag("--oracle", gamma_oracle,
                      "Use the binomial-sum route");

  // fixedsets
  auto* fixed_cmd = app.add_subcommand(
      "fixedsets", "Number of m-element sets fixed by a permutation");
  std::string fixed_perm;
  int fixed_m = 1;
  int fixed_n = 0;
  bool fixed_direct = false;
  fixed_cmd->add_option("--perm", fixed_perm, "Cycle notation, e.g. \"(1 2)(3)\"")
      ->required();
  fixed_cmd->add_option("--m", fixed_m)->required();
  fixed_cmd->add_option("--n", fixed_n, "Size when fixed points are omitted");
  fixed_cmd->add_flag("--direct", fixed_direct,
                      "Enumerate subsets instead of using the cycle type");

  // moment-exact
  auto* mexact_cmd = app.add_subcommand(
      "moment-exact", "Exact moment by full enumeration of S_n");
  int mexact_n = 1;
  std::string mexact_theta = "1";
  std::string mexact_spec;
  std::string mexact_stat = "cycles";
  int mexact_m = 1, mexact_k = 1;
  mexact_cmd->add_option("--n", mexact_n)->required();
  mexact_cmd->add_option("--theta", mexact_theta, "Rational, e.g. 1/2");
  mexact_cmd->add_option("--stat", mexact_stat)
      ->check(CLI::IsMember({"cycles", "fixedsets"}));
  mexact_cmd->add_option("--spec", mexact_spec,
                         "Cycle moment spec m:k[,m:k...]");
  mexact_cmd->add_option("--m", mexact_m, "Set size (fixedsets stat)");
  mexact_cmd->add_option("--k", mexact_k, "Moment order (fixedsets stat)");

  // moment-closed
  auto* mclosed_cmd = app.add_subcommand(
      "moment-closed", "Closed-form Ewens moment E[C_m^k], n >= m*k");
  int mclosed_n = 1, mclosed_m = 1, mclosed_k = 1;
  std::string mclosed_theta = "1";
  mclosed_cmd->add_option("--n", mclosed_n)->required();
  mclosed_cmd->add_option("--theta", mclosed_theta);
  mclosed_cmd->add_option("--m", mclosed_m)->required();
  mclosed_cmd->add_option("--k", mclosed_k)->required();

  // moment-mc
  auto* mmc_cmd = app.add_subcommand(
      "moment-mc", "Monte Carlo moment estimate under Ewens sampling");
  int mmc_n = 1;
  double mmc_theta = 1.0;
  std::string mmc_spec;
  std::int64_t mmc_replicates = 10000;
  mmc_cmd->add_option("--n", mmc_n)->required();
  mmc_cmd->add_option("--theta", mmc_theta);
  mmc_cmd->add_option("--spec", mmc_spec, "m:k[,m:k...]")->required();
  mmc_cmd->add_option("--replicates", mmc_replicates);

  // sample
  auto* sample_cmd =
      app.add_subcommand("sample", "Draw Ewens-distributed permutations");
  int sample_n = 1;
  double sample_theta = 1.0;
  std::int64_t sample_replicates = 1;
  int sample_max_m = 0;
  sample_cmd->add_option("--n", sample_n)->required();
  sample_cmd->add_option("--theta", sample_theta);
  sample_cmd->add_option("--replicates", sample_replicates);
  sample_cmd->add_option("--max-m", sample_max_m,
                         "Emit cycle counts c_1..c_max_m instead");

  // limit
  auto* limit_cmd =
      app.add_subcommand("limit", "Limit law of the fixed-set statistic");
  limit_cmd->require_subcommand(1);
  auto* ldist_cmd = limit_cmd->add_subcommand(
      "dist", "Truncated limit distribution of E_m");
  int ldist_m = 1;
  int ldist_moment_order = 3;
  ldist_cmd->add_option("--m", ldist_m)->required();
  ldist_cmd->add_option("--moment-order", ldist_moment_order,
                        "Orders protected by the box (0 = mass only)");
  auto* legf_cmd =
      limit_cmd->add_subcommand("egf", "V_m(x) = E[exp(x E_m)] truncated");
  int legf_m = 1;
  double legf_x = 0.0;
  bool legf_closed = false;
  legf_cmd->add_option("--m", legf_m)->required();
  legf_cmd->add_option("--x", legf_x)->required();
  legf_cmd->add_flag("--closed", legf_closed, "Use the m=2/3 closed form");
  auto* lcoeffs_cmd = limit_cmd->add_subcommand(
      "coeffs", "Taylor coefficients v_{k;m}/k! of V_m");
  int lcoeffs_m = 1, lcoeffs_K = 1;
  lcoeffs_cmd->add_option("--m", lcoeffs_m)->required();
  lcoeffs_cmd->add_option("--K", lcoeffs_K)->required();

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "Run a verification suite");
  std::string verify_suite;
  std::int64_t verify_replicates = 20000;
  verify_cmd
      ->add_option("suite", verify_suite,
                   "theoremC | theorem1 | theorem2 | identities | all")
      ->required()
      ->check(CLI::IsMember(
          {"theoremC", "theorem1", "theorem2", "identities", "all"}));
  verify_cmd->add_option("--replicates", verify_replicates,
                         "Replicates for the Monte Carlo checks");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  for (auto* sub : limit_cmd->get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Report report;
  auto started = std::chrono::steady_clock::now();
  bool csv_emitted = false;
  try {
    if (bell_cmd->parsed()) {
      report.command = "bell";
      report.inputs["n"] = bell_n;
      report.outputs["value"] = nat_to_string(bell(bell_n));
    } else if (s2_cmd->parsed()) {
      report.command = "stirling2";
      report.inputs = {{"n", s2_n}, {"k", s2_k}};
      report.outputs["value"] = nat_to_string(stirling2(s2_n, s2_k));
    } else if (s1_cmd->parsed()) {
      report.command = "stirling1";
      report.inputs = {{"n", s1_n}, {"k", s1_k}};
      report.outputs["value"] = nat_to_string(stirling1_unsigned(s1_n, s1_k));
    } else if (touchard_cmd->parsed()) {
      report.command = "touchard";
      report.inputs["k"] = touchard_k;
      Polynomial poly = touchard(touchard_k);
      report.outputs["coefficients"] = rat_array(poly.coefficients());
      if (!touchard_x.empty()) {
        BigRat x = parse_rational(touchard_x);
        report.inputs["x"] = touchard_x;
        report.outputs["value"] = rat_to_json(poly.evaluate(x));
      }
    } else if (dobinski_cmd->parsed()) {
      report.command = "dobinski";
      report.inputs = {{"n", dobinski_n},
                       {"x", dobinski_x},
                       {"rel_tol", dobinski_rel_tol}};
      report.outputs["value"] = static_cast<double>(
          dobinski(dobinski_n, static_cast<long double>(dobinski_x),
                   static_cast<long double>(dobinski_rel_tol)));
    } else if (covers_cmd->parsed()) {
      report.command = "covers";
      report.inputs = {{"k", covers_k}, {"m", covers_m},
                       {"oracle", covers_oracle}};
      BigNat value =
          covers_oracle
              ? count_covers_bruteforce(covers_k, covers_m)
              : count_covers(covers_k, covers_m,
                             options.budget > 0 ? options.budget
                                                : 100'000'000);
      report.outputs["value"] = nat_to_string(value);
      if (options.format == "table") {
        out << "k,m,value\n"
            << covers_k << "," << covers_m << "," << nat_to_string(value)
            << "\n";
        csv_emitted = true;
      }
    } else if (gamma_cmd->parsed()) {
      report.command = "gamma";
      UVector u = parse_int_list(gamma_u);
      report.inputs = {{"m", gamma_m}, {"u", u}, {"oracle", gamma_oracle}};
      BigNat value = gamma_oracle ? gamma_binomial_sum(gamma_m, u)
                                  : gamma_coefficient(gamma_m, u);
      report.outputs["value"] = nat_to_string(value);
    } else if (fixed_cmd->parsed()) {
      report.command = "fixedsets";
      std::optional<int> n_opt;
      if (fixed_n > 0) n_opt = fixed_n;
      Permutation p = parse_cycle_notation(fixed_perm, n_opt);
      report.inputs = {{"perm", fixed_perm}, {"m", fixed_m},
                       {"n", p.size()}, {"direct", fixed_direct}};
      BigNat value;
      if (fixed_direct) {
        value = fixed_set_count_direct(
            p, fixed_m, options.budget > 0 ? options.budget : 10'000'000);
      } else {
        value = fixed_set_count(cycle_type(p), fixed_m);
      }
      report.outputs["value"] = nat_to_string(value);
      report.outputs["cycle_counts"] = cycle_type(p).counts();
    } else if (mexact_cmd->parsed()) {
      report.command = "moment-exact";
      BigRat theta = parse_rational(mexact_theta);
      report.inputs = {{"n", mexact_n}, {"theta", mexact_theta},
                       {"stat", mexact_stat}};
      if (mexact_stat == "fixedsets") {
        if (theta != 1) {
          throw std::invalid_argument(
              "fixed-set moments are defined under the uniform measure "
              "(theta = 1)");
        }
        report.inputs["m"] = mexact_m;
        report.inputs["k"] = mexact_k;
        report.outputs["value"] = rat_to_json(
            enumerated_fixed_set_moment(mexact_n, mexact_m, mexact_k));
      } else {
        if (mexact_spec.empty()) {
          throw std::invalid_argument("--spec is required for cycle moments");
        }
        report.inputs["spec"] = mexact_spec;
        report.outputs["value"] = rat_to_json(enumerated_cycle_moment(
            mexact_n, theta, parse_moment_spec(mexact_spec)));
      }
    } else if (mclosed_cmd->parsed()) {
      report.command = "moment-closed";
      BigRat theta = parse_rational(mclosed_theta);
      report.inputs = {{"n", mclosed_n}, {"theta", mclosed_theta},
                       {"m", mclosed_m}, {"k", mclosed_k}};
      report.outputs["value"] = rat_to_json(
          closed_cycle_moment(mclosed_n, theta, mclosed_m, mclosed_k));
    } else if (mmc_cmd->parsed()) {
      report.command = "moment-mc";
      SamplerConfig config{mmc_n, mmc_theta, options.seed, mmc_replicates};
      McMoment result = mc_moment(config, parse_moment_spec(mmc_spec));
      report.inputs = {{"n", mmc_n}, {"theta", mmc_theta},
                       {"spec", mmc_spec}};
      report.seed = options.seed;
      report.outputs = {{"estimate", result.estimate},
                        {"stderr", result.standard_error},
                        {"replicates", result.replicates},
                        {"seed", result.seed}};
    } else if (sample_cmd->parsed()) {
      report.command = "sample";
      report.inputs = {{"n", sample_n}, {"theta", sample_theta},
                       {"replicates", sample_replicates}};
      report.seed = options.seed;
      SamplerConfig config{sample_n, sample_theta, options.seed,
                           sample_replicates};
      if (sample_max_m > 0) {
        report.inputs["max_m"] = sample_max_m;
        nlohmann::json draws = nlohmann::json::array();
        for (std::int64_t r = 0; r < sample_replicates; ++r) {
          draws.push_back(sample_cycle_counts(config, sample_max_m, r));
        }
        report.outputs["counts"] = std::move(draws);
      } else {
        nlohmann::json draws = nlohmann::json::array();
        for (std::int64_t r = 0; r < sample_replicates; ++r) {
          draws.push_back(sample_permutation(config, r).images());
        }
        report.outputs["permutations"] = std::move(draws);
      }
    } else if (ldist_cmd->parsed()) {
      report.command = "limit dist";
      report.inputs = {{"m", ldist_m}, {"eps", options.eps},
                       {"moment_order", ldist_moment_order}};
      TruncatedDistribution dist = limit_distribution(
          ldist_m, options.eps, ldist_moment_order,
          options.budget > 0 ? options.budget : 16'000'000);
      nlohmann::json support = nlohmann::json::array();
      for (const auto& [value, probability] : dist.support) {
        support.push_back(
            {{"value", nat_to_string(value)}, {"p", probability}});
      }
      report.outputs["support"] = std::move(support);
      report.outputs["mass_captured"] = dist.mass_captured;
      report.outputs["mean"] = distribution_moment(dist, 1);
      report.outputs["second_moment"] = distribution_moment(dist, 2);
      double zero_mass = dist.support.empty() || dist.support[0].first != 0
                             ? 0.0
                             : dist.support[0].second;
      double lower = std::max(0.0, dist.mass_captured - zero_mass);
      report.outputs["p_positive"] = {
          {"lower", lower},
          {"upper",
           std::min(1.0, lower + std::max(0.0, 1.0 - dist.mass_captured))}};
    } else if (legf_cmd->parsed()) {
      report.command = "limit egf";
      report.inputs = {{"m", legf_m}, {"x", legf_x},
                       {"closed", legf_closed}, {"eps", options.eps}};
      if (legf_closed) {
        report.outputs["value"] = cover_egf_closed(legf_m, legf_x);
      } else {
        EgfValue value = cover_egf(legf_m, legf_x, options.eps);
        report.outputs["value"] = value.value;
        report.outputs["truncation_bound"] = value.truncation_bound;
      }
    } else if (lcoeffs_cmd->parsed()) {
      report.command = "limit coeffs";
      report.inputs = {{"m", lcoeffs_m}, {"K", lcoeffs_K}};
      report.outputs["coefficients"] =
          rat_array(cover_egf_coefficients(lcoeffs_m, lcoeffs_K));
    } else if (verify_cmd->parsed()) {
      report.command = "verify " + verify_suite;
      report.inputs = {{"suite", verify_suite},
                       {"replicates", verify_replicates}};
      report.seed = options.seed;
      if (verify_suite == "identities" || verify_suite == "all") {
        run_identities_suite(report);
      }
      if (verify_suite == "theoremC" || verify_suite == "all") {
        run_theorem_c_suite(report, options.seed, verify_replicates);
      }
      if (verify_suite == "theorem1" || verify_suite == "all") {
        run_theorem1_suite(report);
      }
      if (verify_suite == "theorem2" || verify_suite == "all") {
        run_theorem2_suite(report, options.seed);
      }
    }
  } catch (const resource_error& e) {
    err << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  }

  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  if (!csv_emitted) {
    if (options.format == "table") {
      print_table(report, out);
    } else {
      out << to_json(report).dump(2) << "\n";
    }
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace permstat
