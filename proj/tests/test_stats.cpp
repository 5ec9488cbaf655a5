#include <doctest.h>

#include <cmath>
#include <numeric>

#include "statbench/errors.hpp"
#include "statbench/stats.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using namespace statbench;
using namespace statbench::stats;

namespace {

std::vector<CellValue> labels(std::initializer_list<const char*> xs) {
  std::vector<CellValue> out;
  for (const char* s : xs) out.emplace_back(s);
  return out;
}

HypothesisSpec spec(Alternative alt = Alternative::TwoSided, double mu = 0, double conf = 0.95) {
  HypothesisSpec s;
  s.alternative = alt;
  s.mu = mu;
  s.conf_level = conf;
  return s;
}

}  // namespace

TEST_CASE("numeric summary") {
  const auto c = numeric_summary(std::vector<double>{5, 5, 5});
  CHECK(c.mean == 5);
  CHECK(*c.sd == 0);
  CHECK((c.min == 5 && c.q1 == 5 && c.median == 5 && c.q3 == 5 && c.max == 5));

  const auto q = numeric_summary(std::vector<double>{1, 2, 3, 4});
  CHECK(q.median == 2.5);
  CHECK(q.q1 == 1.75);
  CHECK(q.q3 == 3.25);

  const std::vector<CellValue> with_missing = {CellValue(1.0), CellValue(Missing{}), CellValue(3.0)};
  const auto m = numeric_summary(with_missing);
  CHECK(m.n == 2);
  CHECK(m.n_missing == 1);
  CHECK(m.mean == 2);

  CHECK_FALSE(numeric_summary(std::vector<double>{7}).sd);
  const std::vector<CellValue> none = {CellValue(Missing{})};
  CHECK_THROWS_AS(numeric_summary(none), DomainError);
}

TEST_CASE("ordinary least squares") {
  const auto exact = ols_fit(std::vector<double>{0, 1, 2}, std::vector<double>{1, 3, 5});
  CHECK(exact.slope == doctest::Approx(2));
  CHECK(exact.intercept == doctest::Approx(1));
  CHECK(exact.r_squared == doctest::Approx(1));
  for (double r : exact.residuals) CHECK(std::fabs(r) < 1e-12);

  const auto quartet = ols_fit(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 1, 4, 3});
  CHECK(std::fabs(quartet.slope - 0.6) < 1e-9);
  CHECK(std::fabs(quartet.intercept - 1.0) < 1e-9);
  CHECK(std::fabs(quartet.r_squared - 0.36) < 1e-9);
  // SSE = Syy - Sxy^2/Sxx = 3.2, se = sqrt(3.2 / 2 / 5), t = 0.6 / se, two-sided p on 2 df.
  const double se = std::sqrt(3.2 / 2 / 5);
  CHECK(std::fabs(quartet.slope_se - se) < 1e-12);
  const double p = 2 * (1 - oracle::t_cdf(0.6 / se, 2));
  CHECK(std::fabs(quartet.p_slope - p) < 1e-8);

  const std::vector<double> x = {0.3, 1.7, 2.2, 5.1, 4.4};
  std::vector<double> y;
  for (double v : x) y.push_back(v + 2.5);
  const auto shifted = ols_fit(x, y);
  CHECK(shifted.slope == doctest::Approx(1));
  CHECK(shifted.intercept == doctest::Approx(2.5));

  CHECK_THROWS_AS(ols_fit(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), DomainError);
  CHECK_THROWS_AS(ols_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}), DomainError);
}

TEST_CASE("regression drops incomplete pairs and residuals sum to zero") {
  const std::vector<CellValue> x = {CellValue(1.0), CellValue(2.0), CellValue(Missing{}), CellValue(4.0),
                                    CellValue(5.0)};
  const std::vector<CellValue> y = {CellValue(2.0), CellValue(Missing{}), CellValue(3.0), CellValue(1.0),
                                    CellValue(8.0)};
  const auto fit = ols_fit(x, y);
  CHECK(fit.n == 3);
  CHECK(std::fabs(std::accumulate(fit.residuals.begin(), fit.residuals.end(), 0.0)) < 1e-9 * 3 * 8);
  CHECK(fit.r_squared >= 0);
  CHECK(fit.r_squared <= 1);
}

TEST_CASE("slope is unchanged by shifting x") {
  gen::Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x, y;
    for (int i = 0; i < 12; ++i) {
      x.push_back(gen::uniform(rng, -3, 3));
      y.push_back(gen::uniform(rng, -3, 3));
    }
    const double c = gen::uniform(rng, -10, 10);
    std::vector<double> xs = x;
    for (double& v : xs) v += c;
    CHECK(ols_fit(xs, y).slope == doctest::Approx(ols_fit(x, y).slope).epsilon(1e-9));
  }
}

TEST_CASE("one-sample t") {
  const auto zero = t_test(std::vector<double>{1, 2, 3}, {}, spec(Alternative::TwoSided, 2));
  CHECK(zero.statistic == 0);
  CHECK(zero.p_value == doctest::Approx(1));

  const auto r = t_test(std::vector<double>{1, 2, 3, 4, 5}, {}, spec());
  CHECK(std::fabs(r.statistic - 4.242640687119285) < 1e-9);
  CHECK(r.df == 4);
  CHECK(std::fabs(r.p_value - 2 * (1 - oracle::t_cdf(r.statistic, 4))) < 1e-8);
  CHECK(r.ci_low < 3);
  CHECK(r.ci_high > 3);
  CHECK(r.ci_high - 3 == doctest::Approx(3 - r.ci_low));

  const auto up = t_test(std::vector<double>{1, 2, 3, 4, 5}, {}, spec(Alternative::Greater));
  CHECK(std::isinf(up.ci_high));
  CHECK(up.ci_high > 0);
  CHECK(std::fabs(up.p_value - (1 - oracle::t_cdf(r.statistic, 4))) < 1e-8);
  const auto down = t_test(std::vector<double>{1, 2, 3, 4, 5}, {}, spec(Alternative::Less));
  CHECK(std::isinf(down.ci_low));
  CHECK(down.ci_low < 0);
}

TEST_CASE("Welch two-sample t") {
  const auto same = t_test(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}, spec());
  CHECK(same.statistic == 0);
  CHECK(same.p_value == doctest::Approx(1));

  // Hand formula: means 3 and 6, variances 2.5 and 34/3, n = 5 and 4.
  const std::vector<double> x = {1, 2, 3, 4, 5}, y = {2, 5, 7, 10};
  const auto r = t_test(x, y, spec());
  const double vx = 2.5 / 5, vy = 34.0 / 3 / 4;
  const double v = vx + vy;
  const double t = (3 - 6) / std::sqrt(v);
  const double df = v * v / (vx * vx / 4 + vy * vy / 3);
  CHECK(std::fabs(r.statistic - t) < 1e-12);
  CHECK(std::fabs(r.df - df) < 1e-12);
  CHECK(std::fabs(r.p_value - 2 * oracle::t_cdf(t, df)) < 1e-8);
  CHECK(r.two_sample);
  CHECK(r.estimate == doctest::Approx(-3));

  CHECK_THROWS_AS(t_test(std::vector<double>{4, 4}, std::vector<double>{4, 4}, spec()), DomainError);
  CHECK_THROWS_AS(t_test(std::vector<double>{1}, {}, spec()), DomainError);
}

TEST_CASE("two-sample t is invariant under a common shift") {
  gen::Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    std::vector<double> x, y;
    for (int i = 0; i < 6; ++i) x.push_back(gen::uniform(rng, 0, 5));
    for (int i = 0; i < 9; ++i) y.push_back(gen::uniform(rng, 0, 5));
    const double c = gen::uniform(rng, -100, 100);
    auto xs = x, ys = y;
    for (double& v : xs) v += c;
    for (double& v : ys) v += c;
    CHECK(t_test(xs, ys, spec()).statistic == doctest::Approx(t_test(x, y, spec()).statistic).epsilon(1e-9));
  }
}

TEST_CASE("hypothesis spec validation") {
  CHECK_THROWS_AS(t_test(std::vector<double>{1, 2, 3}, {}, spec(Alternative::TwoSided, 0, 1.0)), DomainError);
  CHECK_THROWS_AS(t_test(std::vector<double>{1, 2, 3}, {}, spec(Alternative::TwoSided, 0, 0.0)), DomainError);
  CHECK(alternative_from_string("greater") == Alternative::Greater);
  CHECK_FALSE(alternative_from_string("bigger"));
}

TEST_CASE("Wilcoxon rank sum examples") {
  const auto r = wilcoxon_rank_sum(std::vector<double>{1, 2}, std::vector<double>{3, 4}, spec());
  CHECK(r.w_statistic == 0);
  CHECK(r.exact);
  CHECK(std::fabs(r.p_value - 1.0 / 3) < 1e-15);

  const auto tied = wilcoxon_rank_sum(std::vector<double>{1, 1}, std::vector<double>{1, 1}, spec());
  CHECK(tied.w_statistic == 2);
  CHECK_FALSE(tied.exact);

  const std::vector<double> x = {0.3, 1.9, 2.4, 3.3}, y = {1.1, 1.5, 2.0, 4.2, 5.0};
  const auto g = wilcoxon_rank_sum(x, y, spec(Alternative::Greater, 0.25));
  const auto l = wilcoxon_rank_sum(y, x, spec(Alternative::Less, -0.25));
  CHECK(g.p_value == doctest::Approx(l.p_value).epsilon(1e-14));

  CHECK_THROWS_AS(wilcoxon_rank_sum(std::vector<double>{}, std::vector<double>{1}, spec()), DomainError);
}

TEST_CASE("exact Wilcoxon p-values match enumeration") {
  gen::Rng rng(99);
  const auto w = checks::wilcoxon_exact(rng, 8, 5, 1e-12);
  INFO("worst " << w.error << " at " << w.where);
  CHECK(w.ok());
}

TEST_CASE("rank sum null counts sum to the number of assignments") {
  const auto c = rank_sum_counts(4, 6);
  CHECK(c.size() == 25);
  CHECK(std::accumulate(c.begin(), c.end(), 0.0) == 210);
}

TEST_CASE("Wilcoxon large samples use the normal approximation within range") {
  gen::Rng rng(21);
  std::vector<double> x, y;
  for (int i = 0; i < 15; ++i) x.push_back(std::round(gen::uniform(rng, 0, 10)));
  for (int i = 0; i < 12; ++i) y.push_back(std::round(gen::uniform(rng, 0, 10)));
  const auto r = wilcoxon_rank_sum(x, y, spec());
  CHECK_FALSE(r.exact);
  CHECK(r.p_value >= 0);
  CHECK(r.p_value <= 1);
  CHECK(r.w_statistic <= 15 * 12);
}

TEST_CASE("contingency tables") {
  const auto flat = contingency_from_table({"a", "b"}, {"x", "y"}, {{10, 10}, {10, 10}});
  CHECK(flat.chi_square == 0);
  CHECK(flat.p_value == doctest::Approx(1));

  const auto r = contingency_from_table({"a", "b"}, {"x", "y"}, {{10, 20}, {20, 10}});
  for (const auto& row : r.expected)
    for (double e : row) CHECK(e == 15);
  CHECK(std::fabs(r.chi_square - 20.0 / 3) < 1e-9);
  CHECK(r.df == 1);
  CHECK(std::fabs(r.p_value - (1 - oracle::chisq_cdf(20.0 / 3, 1))) < 1e-8);

  CHECK_THROWS_AS(contingency_from_table({"a", "b"}, {"x", "y"}, {{0, 0}, {1, 2}}), DomainError);
  CHECK_THROWS_AS(contingency(labels({"a", "a"}), labels({"x", "y"})), DomainError);
}

TEST_CASE("contingency from cells sorts levels and is symmetric") {
  const auto a = labels({"m", "f", "m", "f", "m", "f", "m"});
  const auto b = labels({"y", "n", "n", "y", "y", "y", "n"});
  const auto ab = contingency(a, b);
  const auto ba = contingency(b, a);
  CHECK(ab.row_levels == std::vector<std::string>{"f", "m"});
  CHECK(ab.col_levels == std::vector<std::string>{"n", "y"});
  CHECK(ab.observed == std::vector<std::vector<long long>>{{1, 2}, {2, 2}});
  CHECK(ab.chi_square == doctest::Approx(ba.chi_square).epsilon(1e-14));
  CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-14));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(ab.observed[i][j] == ba.observed[j][i]);
}

TEST_CASE("chi-square is invariant under row and column permutation") {
  const auto r = contingency_from_table({"a", "b", "c"}, {"x", "y"}, {{3, 9}, {7, 2}, {5, 5}});
  const auto p = contingency_from_table({"a", "b", "c"}, {"x", "y"}, {{5, 5}, {3, 9}, {7, 2}});
  const auto q = contingency_from_table({"a", "b", "c"}, {"x", "y"}, {{9, 3}, {2, 7}, {5, 5}});
  CHECK(p.chi_square == doctest::Approx(r.chi_square).epsilon(1e-14));
  CHECK(q.chi_square == doctest::Approx(r.chi_square).epsilon(1e-14));
  CHECK(r.df == 2);
}

TEST_CASE("kernels are pure") {
  const std::vector<double> x = {0.5, 1.25, 3.0, 2.0}, y = {1.0, 0.0, 4.5, 2.5};
  const auto a = ols_fit(x, y), b = ols_fit(x, y);
  CHECK(a.slope == b.slope);
  CHECK(a.p_slope == b.p_slope);
  CHECK(wilcoxon_rank_sum(x, y, spec()).p_value == wilcoxon_rank_sum(x, y, spec()).p_value);
}
