#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "causaleval/dist.hpp"
#include "causaleval/error.hpp"

using namespace causaleval;
namespace d = causaleval::dist;

TEST_CASE("normal cdf matches published values") {
  CHECK(d::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  // published table values
  CHECK(std::abs(d::normal_cdf(1.959964) - 0.975) < 1e-6);
  CHECK(std::abs(d::normal_cdf(1.0) - 0.8413447460685429) < 1e-12);
  CHECK(std::abs(d::normal_cdf(-2.5) - 0.006209665325776132) < 1e-12);
  CHECK(std::abs(d::normal_cdf(0.5) - 0.6914624612740131) < 1e-12);
  CHECK(std::abs(d::normal_cdf(-3.0) - 0.0013498980316300945) < 1e-12);
  CHECK(std::abs(d::normal_cdf(4.2) - 0.9999866542509841) < 1e-12);
  CHECK(d::normal_cdf(10.0) > 1.0 - 1e-15);
  CHECK(d::normal_cdf(-10.0) < 1e-15);
}

TEST_CASE("normal cdf is nondecreasing with limits 0 and 1") {
  double prev = 0.0;
  for (double x = -8.0; x <= 8.0; x += 0.05) {
    const double c = d::normal_cdf(x);
    CHECK(c >= prev);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    prev = c;
  }
}

TEST_CASE("normal quantile") {
  CHECK(d::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(d::normal_quantile(0.975) - 1.959963984540054) < 1e-4);
  // symmetry identity
  for (double p : {0.01, 0.1, 0.3, 0.42, 0.75, 0.999}) {
    CHECK(d::normal_quantile(p) == doctest::Approx(-d::normal_quantile(1.0 - p)).epsilon(1e-10));
  }
  // quantile then cdf returns p
  for (double p = 0.001; p < 1.0; p += 0.013) {
    CHECK(std::abs(d::normal_cdf(d::normal_quantile(p)) - p) < 1e-10);
  }
  CHECK_THROWS_AS(d::normal_quantile(0.0), ValueError);
  CHECK_THROWS_AS(d::normal_quantile(1.0), ValueError);
  CHECK_THROWS_AS(d::normal_quantile(-0.2), ValueError);
}

TEST_CASE("student cdf symmetry and published quantiles") {
  for (double df : {1.0, 2.0, 7.5, 30.0, 500.0}) {
    CHECK(d::student_cdf(0.0, df) == doctest::Approx(0.5).epsilon(1e-14));
  }
  CHECK(std::abs(d::student_cdf(2.0, 7.0) - 0.9571903357185121) < 1e-10);
  CHECK(std::abs(d::student_cdf(-1.3, 3.5) - 0.13629770790218498) < 1e-10);

  // published t tables
  CHECK(std::abs(d::student_quantile(0.975, 10.0) - 2.228138852) < 5e-4);
  CHECK(std::abs(d::student_quantile(0.975, 1.0) - 12.706204736) < 1e-3);
  CHECK(std::abs(d::student_quantile(0.975, 2.0) - 4.302652730) < 1e-3);
  CHECK(std::abs(d::student_quantile(0.95, 5.0) - 2.015048373) < 5e-4);
  // normal limit
  CHECK(std::abs(d::student_quantile(0.975, 1e6) - 1.959963985) < 1e-3);

  CHECK_THROWS_AS(d::student_cdf(1.0, 0.0), ValueError);
  CHECK_THROWS_AS(d::student_cdf(1.0, -3.0), ValueError);
  CHECK_THROWS_AS(d::student_quantile(1.2, 5.0), ValueError);
}

TEST_CASE("student quantile inverts the cdf") {
  for (double df : {1.0, 3.0, 12.0, 100.0}) {
    for (double p = 0.02; p < 1.0; p += 0.07) {
      const double x = d::student_quantile(p, df);
      CHECK(std::abs(d::student_cdf(x, df) - p) < 1e-6);
    }
  }
}

TEST_CASE("student cdf approaches the normal cdf for large df") {
  for (double x = -4.0; x <= 4.0; x += 0.25) {
    CHECK(std::abs(d::student_cdf(x, 1e6) - d::normal_cdf(x)) < 1e-3);
  }
}

TEST_CASE("kolmogorov p-value") {
  CHECK(d::kolmogorov_pvalue(0.0, 100) == 1.0);
  CHECK(d::kolmogorov_pvalue(1.0, 1000) < 1e-12);
  // classical 5% point of the Kolmogorov law: sqrt(n) d = 1.36
  const std::size_t n = 400;
  const double dstat = 1.36 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(d::kolmogorov_pvalue(dstat, n) - 0.049) < 0.003);
  // monotone in d
  double prev = 1.0;
  for (double dd = 0.01; dd < 0.5; dd += 0.01) {
    const double p = d::kolmogorov_pvalue(dd, 50);
    CHECK(p <= prev + 1e-12);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    prev = p;
  }
  CHECK_THROWS_AS(d::kolmogorov_pvalue(-0.1, 10), ValueError);
  CHECK_THROWS_AS(d::kolmogorov_pvalue(1.5, 10), ValueError);
}

TEST_CASE("log gamma agrees with factorials") {
  CHECK(std::abs(d::log_gamma(1.0)) < 1e-13);
  CHECK(std::abs(d::log_gamma(2.0)) < 1e-13);
  CHECK(d::log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-13));
  CHECK(d::log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-13));
  CHECK_THROWS_AS(d::log_gamma(0.0), ValueError);
}

TEST_CASE("incomplete beta endpoints and symmetry") {
  CHECK(d::incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(d::incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1,1) = x
  for (double x = 0.1; x < 1.0; x += 0.2) {
    CHECK(d::incomplete_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
  }
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
  CHECK(d::incomplete_beta(2.5, 4.0, 0.3) ==
        doctest::Approx(1.0 - d::incomplete_beta(4.0, 2.5, 0.7)).epsilon(1e-12));
}
