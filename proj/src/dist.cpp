#include "causaleval/dist.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "causaleval/error.hpp"

namespace causaleval::dist {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 100000;

}  // namespace

double log_gamma(double x) {
  // Lanczos approximation, g = 7, 9 coefficients. Relative error ~ 1e-15
  // over the positive axis.
  static const double coef[9] = {
      0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,  12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x <= 0.0) throw ValueError("log_gamma requires x > 0");
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(M_PI / std::sin(M_PI * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double sum = coef[0];
  for (int i = 1; i < 9; ++i) sum += coef[i] / (z + i);
  const double t = z + 7.5;
  return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

namespace {

// Series for P(a,x), effective for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
  }
  throw ValueError("gamma_p series did not converge");
}

// Modified Lentz continued fraction for Q(a,x), effective for x >= a + 1.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return h * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
  }
  throw ValueError("gamma_q continued fraction did not converge");
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw ValueError("gamma_p requires a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw ValueError("gamma_q requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double normal_cdf(double x) {
  if (std::isnan(x)) throw ValueError("normal_cdf requires finite x");
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double u = 0.5 * x * x;
  // Phi(x) = 0.5 * erfc(-x/sqrt(2)); erfc(t) = Q(1/2, t^2) for t >= 0.
  if (x >= 0.0) return 1.0 - 0.5 * gamma_q(0.5, u);
  return 0.5 * gamma_q(0.5, u);
}

namespace {

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

// Acklam's rational approximation to the normal quantile (|rel err| < 1.2e-9),
// used as the starting point for Halley refinement.
double normal_quantile_estimate(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValueError("normal_quantile requires p in (0,1), got " + std::to_string(p));
  }
  double x = normal_quantile_estimate(p);
  // Two Halley steps push the residual to machine precision.
  for (int i = 0; i < 2; ++i) {
    const double e = normal_cdf(x) - p;
    const double f = normal_pdf(x);
    if (f <= 0.0) break;
    const double u = e / f;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw ValueError("incomplete_beta requires a, b > 0");
  if (x < 0.0 || x > 1.0) throw ValueError("incomplete_beta requires x in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                           a * std::log(x) + b * std::log1p(-x);

  // Modified Lentz on the standard continued fraction; converges fastest for
  // x < (a+1)/(a+b+2), otherwise use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
  if (x >= (a + 1.0) / (a + b + 2.0)) {
    return 1.0 - incomplete_beta(b, a, 1.0 - x);
  }

  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(log_front) * h / a;
}

double student_cdf(double x, double df) {
  if (!(df > 0.0)) throw ValueError("student_cdf requires df > 0");
  if (std::isnan(x)) throw ValueError("student_cdf requires finite x");
  if (x == 0.0) return 0.5;
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double xb = df / (df + x * x);
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, xb);
  return x > 0.0 ? 1.0 - tail : tail;
}

double student_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ValueError("student_quantile requires p in (0,1), got " + std::to_string(p));
  }
  if (!(df > 0.0)) throw ValueError("student_quantile requires df > 0");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_quantile(1.0 - p, df);

  // Bracket the root above 0, then bisect. The CDF is strictly increasing.
  double lo = 0.0;
  double hi = 1.0;
  while (student_cdf(hi, df) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw ValueError("student_quantile bracket overflow");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_cdf(mid, df) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

double kolmogorov_pvalue(double d, std::size_t n) {
  if (!(d >= 0.0 && d <= 1.0)) throw ValueError("kolmogorov_pvalue requires d in [0,1]");
  if (n < 1) throw ValueError("kolmogorov_pvalue requires n >= 1");
  if (d == 0.0) return 1.0;
  const double lambda = 2.0 * static_cast<double>(n) * d * d;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= kMaxIter; ++k) {
    const double term = std::exp(-lambda * k * k);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  const double p = 2.0 * sum;
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace causaleval::dist
