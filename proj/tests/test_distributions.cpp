#include <doctest.h>

#include <cmath>

#include "statbench/distributions.hpp"
#include "statbench/errors.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

namespace d = statbench::dist;

TEST_CASE("symmetry points") {
  CHECK(d::normal_cdf(0) == 0.5);
  for (double df : {1.0, 2.5, 7.0, 300.0}) CHECK(d::t_cdf(0, df) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("chi-square with two degrees of freedom is exponential") {
  for (double x : {0.0, 0.01, 0.5, 1.0, 3.0, 10.0, 40.0}) {
    CHECK(std::fabs(d::chisq_cdf(x, 2) - (1 - std::exp(-x / 2))) < 1e-14);
    CHECK(std::fabs(d::chisq_sf(x, 2) - std::exp(-x / 2)) < 1e-14 * std::max(1.0, std::exp(-x / 2)) + 1e-300);
  }
}

TEST_CASE("normal 97.5% point") {
  CHECK(std::fabs(d::normal_cdf(1.959964) - oracle::normal_cdf(1.959964)) < 1e-12);
  CHECK(d::normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-6));
  CHECK(std::fabs(d::normal_quantile(0.975) - 1.959963984540054) < 1e-12);
}

TEST_CASE("CDFs agree with quadrature on a coarse grid") {
  const auto w = checks::distributions(101, 1e-10);
  INFO("worst " << w.error << " at " << w.where);
  CHECK(w.ok());
}

TEST_CASE("t_quantile inverts t_cdf") {
  const auto w = checks::quantile_round_trip(81, 1e-8);
  INFO("worst " << w.error << " at " << w.where);
  CHECK(w.ok());
}

TEST_CASE("CDFs are monotone and bounded") {
  for (double df : {1.0, 5.0, 100.0}) {
    double prev_t = 0, prev_c = 0;
    for (int i = 0; i <= 400; ++i) {
      const double t = -40 + 0.2 * i;
      const double pt = d::t_cdf(t, df);
      const double pc = d::chisq_cdf(std::max(0.0, t + 40), df);
      CHECK(pt >= prev_t);
      CHECK(pc >= prev_c);
      CHECK(pt >= 0);
      CHECK(pt <= 1);
      CHECK(pc <= 1);
      prev_t = pt;
      prev_c = pc;
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(d::t_quantile(0, 3), statbench::DomainError);
  CHECK_THROWS_AS(d::t_quantile(1, 3), statbench::DomainError);
  CHECK_THROWS_AS(d::t_quantile(0.5, 0), statbench::DomainError);
  CHECK_THROWS_AS(d::t_cdf(1, -1), statbench::DomainError);
  CHECK_THROWS_AS(d::chisq_cdf(1, 0), statbench::DomainError);
}

TEST_CASE("incomplete gamma and beta complements") {
  for (double a : {0.5, 1.0, 3.0, 20.0}) {
    for (double x : {0.1, 1.0, 5.0, 30.0}) CHECK(std::fabs(d::gamma_p(a, x) + d::gamma_q(a, x) - 1) < 1e-14);
  }
  for (double a : {0.5, 2.0, 10.0}) {
    for (double b : {0.5, 3.0}) {
      for (double x : {0.05, 0.5, 0.95}) {
        CHECK(std::fabs(d::incomplete_beta(a, b, x) + d::incomplete_beta(b, a, 1 - x) - 1) < 1e-13);
      }
    }
  }
}

TEST_CASE("the quadrature oracle reproduces closed forms") {
  for (int i = 0; i <= 200; ++i) {
    const double x = 0.25 * i;
    CHECK(std::fabs(oracle::chisq_cdf(x, 2) - (1 - std::exp(-x / 2))) < 1e-13);
    const double t = -10 + 0.1 * i;
    CHECK(std::fabs(oracle::t_cdf(t, 1) - (0.5 + std::atan(t) / M_PI)) < 1e-13);
    CHECK(std::fabs(oracle::normal_cdf(t) - 0.5 * std::erfc(-t / std::sqrt(2.0))) < 1e-13);
  }
}
