#include "causaleval/ols.hpp"

#include <cmath>

#include "causaleval/dist.hpp"
#include "causaleval/error.hpp"

namespace causaleval {

namespace {

constexpr double kRankTol = 1e-10;

void check_rank_impl(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                     const std::vector<ColumnInfo>& columns) {
  const auto& R = qr.matrixR();
  const Eigen::Index k = qr.cols();
  const double pivot0 = std::abs(R(0, 0));
  for (Eigen::Index j = 0; j < k; ++j) {
    if (std::abs(R(j, j)) < kRankTol * pivot0) {
      // Pivoting sorts the diagonal; the permutation names the column that
      // became linearly dependent first.
      const Eigen::Index orig = qr.colsPermutation().indices()(j);
      const std::string name = orig < static_cast<Eigen::Index>(columns.size())
                                   ? columns[static_cast<std::size_t>(orig)].name
                                   : "#" + std::to_string(orig);
      throw ModelError("design is rank deficient: column '" + name +
                       "' is collinear with the others");
    }
  }
}

}  // namespace

void check_full_rank(const Eigen::MatrixXd& X, const std::vector<ColumnInfo>& columns) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  check_rank_impl(qr, columns);
}

OlsFit fit_ols(const DesignMatrix& dm) {
  const Eigen::Index n = dm.n();
  const Eigen::Index k = dm.n_columns();
  if (n <= k) {
    throw ModelError("need more observations than design columns (n=" +
                     std::to_string(n) + ", columns=" + std::to_string(k) + ")");
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dm.X);
  check_rank_impl(qr, dm.columns);

  OlsFit fit;
  fit.design = dm;
  fit.beta = qr.solve(dm.y);
  fit.fitted = dm.X * fit.beta;
  fit.residuals = dm.y - fit.fitted;
  fit.df_resid = static_cast<double>(n - k);
  const double rss = fit.residuals.squaredNorm();
  fit.s2 = rss / fit.df_resid;

  // (X'X)^-1 = P R^-1 R^-T P' from X P = Q R.
  const Eigen::MatrixXd R =
      qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd xtx_inv_perm = Rinv * Rinv.transpose();
  const auto& perm = qr.colsPermutation();
  fit.cov_beta = fit.s2 * (perm * xtx_inv_perm * perm.transpose());

  // Leverages from the thin Q: H = Q1 Q1', so H_ii = ||Q1 row i||^2.
  const Eigen::MatrixXd Q1 =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  fit.hat_diag = Q1.rowwise().squaredNorm();

  const double mean_y = dm.y.mean();
  const double ss_tot = (dm.y.array() - mean_y).matrix().squaredNorm();
  fit.r2 = ss_tot > 0.0 ? 1.0 - rss / ss_tot : 0.0;
  fit.r2_adj = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) / fit.df_resid;
  return fit;
}

std::vector<CoefRow> coef_table(const OlsFit& fit, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValueError("alpha must be in (0,1)");
  const double tq = dist::student_quantile(1.0 - alpha / 2.0, fit.df_resid);
  std::vector<CoefRow> rows;
  rows.reserve(static_cast<std::size_t>(fit.beta.size()));
  for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
    CoefRow row;
    row.name = fit.design.columns[static_cast<std::size_t>(j)].name;
    row.estimate = fit.beta(j);
    row.se = std::sqrt(std::max(0.0, fit.cov_beta(j, j)));
    if (row.se == 0.0) {
      row.degenerate = true;
      rows.push_back(row);
      continue;
    }
    row.stat = row.estimate / row.se;
    row.p = 2.0 * (1.0 - dist::student_cdf(std::abs(row.stat), fit.df_resid));
    row.ci_low = row.estimate - tq * row.se;
    row.ci_high = row.estimate + tq * row.se;
    rows.push_back(row);
  }
  return rows;
}

Eigen::VectorXd predict(const OlsFit& fit, const Dataset& newdata) {
  return encode_rows(fit.design, newdata) * fit.beta;
}

}  // namespace causaleval
