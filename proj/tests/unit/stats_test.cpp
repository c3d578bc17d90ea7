#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "ordo/error.hpp"
#include "ordo/stats.hpp"

namespace stats = ordo::stats;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double eps,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(f, a, m, fa, flm, fm);
  const double right = simpson(f, m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps = 1e-10) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson(f, a, b, fa, fm, fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 40);
}

double t_density(double x, double df) {
  const double c = std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
                   0.5 * std::log(df * M_PI);
  return std::exp(c - 0.5 * (df + 1.0) * std::log1p(x * x / df));
}

double t_cdf_numeric(double t, double df) {
  if (t < 0.0) {
    return 0.5 - integrate([&](double x) { return t_density(x, df); }, t, 0.0);
  }
  return 0.5 + integrate([&](double x) { return t_density(x, df); }, 0.0, t);
}

double f_density(double x, double d1, double d2) {
  if (x <= 0.0) return 0.0;
  const double half1 = 0.5 * d1;
  const double half2 = 0.5 * d2;
  const double log_beta =
      std::lgamma(half1) + std::lgamma(half2) - std::lgamma(half1 + half2);
  const double log_pdf = half1 * std::log(d1 / d2) + (half1 - 1.0) * std::log(x) -
                         (half1 + half2) * std::log1p(d1 * x / d2) - log_beta;
  return std::exp(log_pdf);
}

double f_cdf_numeric(double f, double d1, double d2) {
  if (f <= 0.0) return 0.0;
  return integrate([&](double x) { return f_density(x, d1, d2); }, 1e-300, f);
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("incomplete beta edge values and symmetry") {
  CHECK(stats::incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(stats::incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1,1) is the identity
  CHECK(stats::incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  for (double x : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (double a : {0.5, 2.0, 7.0}) {
      for (double b : {1.5, 4.0}) {
        CHECK(stats::incomplete_beta(a, b, x) ==
              doctest::Approx(1.0 - stats::incomplete_beta(b, a, 1.0 - x))
                  .epsilon(1e-10));
      }
    }
  }
  CHECK_THROWS_AS(stats::incomplete_beta(-1.0, 2.0, 0.5), ordo::Error);
}

TEST_CASE("t CDF agrees with numeric integration to 1e-6") {
  for (double df : {5.0, 30.0, 99.0, 200.0}) {
    for (double t : {-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      CAPTURE(df);
      CAPTURE(t);
      CHECK(std::abs(stats::student_t_cdf(t, df) - t_cdf_numeric(t, df)) < 1e-6);
    }
  }
  CHECK(stats::student_t_cdf(0.0, 10.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("upper tail at t=2, df=99") {
  const double p = 1.0 - stats::student_t_cdf(2.0, 99.0);
  CHECK(p == doctest::Approx(0.0241).epsilon(0.02));
  CHECK(std::abs(p - (1.0 - t_cdf_numeric(2.0, 99.0))) < 1e-6);
}

TEST_CASE("F CDF agrees with numeric integration to 1e-6") {
  const std::vector<std::pair<double, double>> dfs = {{3, 10}, {5, 30}, {2, 99}, {8, 8}};
  for (const auto& [d1, d2] : dfs) {
    for (double f : {0.1, 0.5, 1.0, 1.5, 2.5, 4.0}) {
      CAPTURE(d1);
      CAPTURE(d2);
      CAPTURE(f);
      CHECK(std::abs(stats::f_cdf(f, d1, d2) - f_cdf_numeric(f, d1, d2)) < 1e-6);
    }
  }
  CHECK(stats::f_cdf(0.0, 3.0, 10.0) == 0.0);
}

TEST_CASE("CDFs are monotone in their statistic") {
  double prev_t = -1.0;
  for (double t = -4.0; t <= 4.0; t += 0.25) {
    const double v = stats::student_t_cdf(t, 7.0);
    CHECK(v > prev_t);
    prev_t = v;
  }
  double prev_f = -1.0;
  for (double f = 0.0; f <= 6.0; f += 0.25) {
    const double v = stats::f_cdf(f, 4.0, 17.0);
    CHECK(v >= prev_f);
    prev_f = v;
  }
}

TEST_CASE("one-sample test against baseline samples") {
  std::vector<double> samples;
  for (int i = 0; i < 100; ++i) {
    samples.push_back(0.6 + 0.001 * (i - 49.5));
  }
  // observed equal to the sample mean
  const auto centered =
      stats::t_test_vs_baseline(0.6, samples, stats::Direction::lower_better);
  CHECK(centered.p_one_sided == doctest::Approx(0.5).epsilon(0.05));
  CHECK_FALSE(centered.degenerate);

  // observed far below every sample: strong evidence for lower_better
  const auto better =
      stats::t_test_vs_baseline(0.01, samples, stats::Direction::lower_better);
  CHECK(better.p_one_sided < 0.001);
  CHECK(better.p_two_sided < 0.002);

  // same observation under higher_better is the opposite tail
  const auto worse =
      stats::t_test_vs_baseline(0.01, samples, stats::Direction::higher_better);
  CHECK(worse.p_one_sided > 0.999);

  CHECK_THROWS_WITH_AS(
      stats::t_test_vs_baseline(0.5, std::vector<double>{1.0},
                                stats::Direction::lower_better),
      doctest::Contains("at least 2 samples"), ordo::Error);
}

TEST_CASE("degenerate zero-variance baseline") {
  const std::vector<double> constant(10, 0.5);
  const auto strictly_better =
      stats::t_test_vs_baseline(0.4, constant, stats::Direction::lower_better);
  CHECK(strictly_better.degenerate);
  CHECK(strictly_better.p_one_sided == 0.0);

  const auto equal =
      stats::t_test_vs_baseline(0.5, constant, stats::Direction::lower_better);
  CHECK(equal.degenerate);
  CHECK(equal.p_one_sided == 1.0);

  const auto worse =
      stats::t_test_vs_baseline(0.6, constant, stats::Direction::lower_better);
  CHECK(worse.p_one_sided == 1.0);
}

TEST_CASE("anova") {
  const std::vector<std::vector<double>> identical = {
      {1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}};
  const auto same = stats::anova_oneway(identical);
  CHECK(same.f_stat == 0.0);
  CHECK(same.p_value == 1.0);

  const std::vector<std::vector<double>> separated = {
      {-0.01, 0.0, 0.01, -0.005, 0.005}, {9.99, 10.0, 10.01, 9.995, 10.005}};
  const auto split = stats::anova_oneway(separated);
  CHECK(split.p_value < 1e-6);
  CHECK(split.df_between == 1.0);
  CHECK(split.df_within == 8.0);

  CHECK_THROWS_WITH_AS(stats::anova_oneway({{1.0, 2.0}}),
                       doctest::Contains("at least 2 groups"), ordo::Error);
  CHECK_THROWS_WITH_AS(stats::anova_oneway({{1.0}, {2.0}}),
                       doctest::Contains("at least 2 values"), ordo::Error);
}

TEST_CASE("anova p-value shrinks as groups separate") {
  auto p_at = [](double gap) {
    const std::vector<std::vector<double>> groups = {
        {0.0, 0.1, -0.1, 0.05}, {gap, gap + 0.1, gap - 0.1, gap + 0.05}};
    return stats::anova_oneway(groups).p_value;
  };
  CHECK(p_at(0.5) > p_at(1.0));
  CHECK(p_at(1.0) > p_at(2.0));
}

TEST_CASE("pairwise Bonferroni") {
  std::map<std::string, std::vector<double>> groups;
  groups["a"] = {1.0, 1.1, 0.9, 1.05};
  groups["b"] = {1.0, 1.1, 0.9, 1.05};
  groups["c"] = {5.0, 5.1, 4.9, 5.05};
  groups["d"] = {5.0, 5.1, 4.9, 5.05};
  const auto result = stats::pairwise_bonferroni(groups, 0.05);
  CHECK(result.pairs.size() == 6);  // k(k-1)/2 with k=4
  CHECK(result.alpha == 0.05);
  CHECK(result.alpha_adjusted == doctest::Approx(0.05 / 6.0).epsilon(1e-12));

  int significant = 0;
  for (const auto& pair : result.pairs) {
    if (pair.significant) significant += 1;
    CAPTURE(pair.group_a);
    CAPTURE(pair.group_b);
    const bool cross = (pair.group_a < "c") != (pair.group_b < "c");
    CHECK(pair.significant == cross);
  }
  CHECK(significant == 4);  // a-c, a-d, b-c, b-d

  REQUIRE(result.ranked_mean_p.size() == 4);
  CHECK(result.ranked_mean_p[0].second <= result.ranked_mean_p[1].second);
  CHECK(result.ranked_mean_p[1].second <= result.ranked_mean_p[2].second);
  CHECK(result.ranked_mean_p[2].second <= result.ranked_mean_p[3].second);
}

TEST_CASE("pairwise with identical groups keeps a stable ranking") {
  std::map<std::string, std::vector<double>> groups;
  for (const char* id : {"x", "y", "z"}) {
    groups[id] = {2.0, 2.0, 2.0};
  }
  const auto result = stats::pairwise_bonferroni(groups, 0.05);
  CHECK(result.pairs.size() == 3);
  for (const auto& pair : result.pairs) {
    CHECK(pair.p_value == 1.0);
    CHECK(pair.degenerate);
  }
  REQUIRE(result.ranked_mean_p.size() == 3);
  CHECK(result.ranked_mean_p[0].first == "x");
  CHECK(result.ranked_mean_p[1].first == "y");
  CHECK(result.ranked_mean_p[2].first == "z");
}

TEST_CASE("direction conversions") {
  CHECK(stats::direction_from_string("lower_better") ==
        stats::Direction::lower_better);
  CHECK(stats::to_string(stats::Direction::higher_better) == "higher_better");
  CHECK_THROWS_AS(stats::direction_from_string("sideways"), ordo::Error);
}

}
