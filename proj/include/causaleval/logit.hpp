#ifndef CAUSALEVAL_LOGIT_HPP
#define CAUSALEVAL_LOGIT_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "causaleval/formula.hpp"
#include "causaleval/ols.hpp"  // CoefRow

namespace causaleval {

struct LogitFit {
  Eigen::VectorXd beta;
  Eigen::MatrixXd info_inv;  // (X'WX)^-1 at beta: coefficient covariance
  double loglik_full = 0.0;
  double loglik_null = 0.0;  // intercept-only maximum, closed form
  bool converged = false;
  int iterations = 0;
  Eigen::VectorXd fitted_prob;  // sigma(x_i beta), in (0,1)
  DesignMatrix design;
};

// Bernoulli log-likelihood and its derivatives at beta. Uses the softplus
// rearrangement, stable for |x beta| up to ~700.
//   l(b)   = sum y log sigma(xb) + (1-y) log(1 - sigma(xb))
//   grad   = X'(y - p)
//   hess   = -X'WX, W = diag(p(1-p))
double logit_loglik(const Eigen::VectorXd& beta, const DesignMatrix& dm);
Eigen::VectorXd logit_gradient(const Eigen::VectorXd& beta, const DesignMatrix& dm);
Eigen::MatrixXd logit_hessian(const Eigen::VectorXd& beta, const DesignMatrix& dm);

// Newton-Raphson from beta = 0 with step halving. Converged when the
// gradient max-norm drops below 1e-8 or the relative likelihood change
// below 1e-12. Separation (nonexistent MLE) is reported as a ModelError.
LogitFit fit_logit(const DesignMatrix& dm);

// Wald inference: z statistics against the normal law.
std::vector<CoefRow> coef_table_logit(const LogitFit& fit, double alpha);

struct AmeRow {
  std::string name;
  double ame = 0.0;
  double se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool discrete = false;  // computed as a 0/1 difference rather than a derivative
};

// Average marginal effect of design column k with a delta-method interval.
// Continuous columns use (1/n) sum sigma'(x_i b) b_k; indicator columns use
// the discrete difference between the column forced to 1 and to 0.
AmeRow average_marginal_effect(const LogitFit& fit, Eigen::Index column, double alpha);

// All non-intercept columns.
std::vector<AmeRow> marginal_effects(const LogitFit& fit, double alpha);

// McFadden pseudo-R^2: 1 - l_full / l_null.
double mcfadden_r2(const LogitFit& fit);

}  // namespace causaleval

#endif  // CAUSALEVAL_LOGIT_HPP
