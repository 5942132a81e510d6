#ifndef CAUSALEVAL_DIST_HPP
#define CAUSALEVAL_DIST_HPP

#include <cstddef>

namespace causaleval::dist {

// Standard normal CDF, absolute error below 1e-12. Computed through the
// regularized incomplete gamma functions P(1/2, x^2/2) / Q(1/2, x^2/2)
// (series for small arguments, continued fraction for large ones).
double normal_cdf(double x);

// Inverse of normal_cdf for p in (0,1). Rational initial estimate refined by
// Halley steps; |Phi(x) - p| <= 1e-10. Throws ValueError outside (0,1).
double normal_quantile(double p);

// Student t CDF for df > 0 via the regularized incomplete beta function.
double student_cdf(double x, double df);

// Inverse of student_cdf, found by bracketed bisection on the CDF.
double student_quantile(double p, double df);

// Asymptotic Kolmogorov distribution p-value for a KS statistic d observed
// on a sample of size n:  p = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 n d^2),
// truncated once terms drop below 1e-12 and clamped to [0,1].
double kolmogorov_pvalue(double d, std::size_t n);

// Building blocks, exposed for testing.
double log_gamma(double x);                            // Lanczos, x > 0
double gamma_p(double a, double x);                    // regularized P(a,x)
double gamma_q(double a, double x);                    // regularized Q(a,x)
double incomplete_beta(double a, double b, double x);  // regularized I_x(a,b)

}  // namespace causaleval::dist

#endif  // CAUSALEVAL_DIST_HPP
