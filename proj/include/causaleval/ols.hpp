#ifndef CAUSALEVAL_OLS_HPP
#define CAUSALEVAL_OLS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "causaleval/formula.hpp"

namespace causaleval {

struct OlsFit {
  Eigen::VectorXd beta;        // intercept first
  Eigen::MatrixXd cov_beta;    // s^2 (X'X)^-1
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;   // y - fitted, exactly
  Eigen::VectorXd hat_diag;    // leverages H_ii
  double s2 = 0.0;             // e'e / (n - K)
  double df_resid = 0.0;       // n - K, K counting all columns
  double r2 = 0.0;
  double r2_adj = 0.0;
  DesignMatrix design;
};

// Least squares through a column-pivoted QR factorization; the covariance is
// reconstructed from the R factor rather than by forming (X'X)^-1 directly.
// Throws ModelError on rank deficiency, naming the offending column.
OlsFit fit_ols(const DesignMatrix& dm);

// Raises ModelError when the design columns are linearly dependent
// (smallest R diagonal below 1e-10 of the largest). Shared with the logit
// fitter.
void check_full_rank(const Eigen::MatrixXd& X, const std::vector<ColumnInfo>& columns);

struct CoefRow {
  std::string name;
  double estimate = 0.0;
  double se = 0.0;
  double stat = 0.0;     // t (OLS) or z (logit)
  double p = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool degenerate = false;  // se == 0: statistics unavailable
};

// Per-coefficient inference at level alpha: t statistics against the
// Student law with n-K degrees of freedom, CI = estimate +- t_{1-a/2} se.
std::vector<CoefRow> coef_table(const OlsFit& fit, double alpha);

// Fitted values for new observations encoded against the trained design.
Eigen::VectorXd predict(const OlsFit& fit, const Dataset& newdata);

}  // namespace causaleval

#endif  // CAUSALEVAL_OLS_HPP
