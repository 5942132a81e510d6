#include "causaleval/logit.hpp"

#include <algorithm>
#include <cmath>

#include "causaleval/dist.hpp"
#include "causaleval/error.hpp"

namespace causaleval {

namespace {

constexpr double kGradTol = 1e-8;
constexpr double kLoglikRelTol = 1e-12;
constexpr int kMaxIter = 100;
constexpr int kMaxHalvings = 30;
constexpr double kSeparationBeta = 30.0;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log sigma(z) without overflow: -log1p(exp(-z)) for z >= 0, else z - log1p(exp(z)).
double log_sigmoid(double z) {
  if (z >= 0.0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

void require_binary(const DesignMatrix& dm) {
  for (Eigen::Index i = 0; i < dm.y.size(); ++i) {
    if (dm.y(i) != 0.0 && dm.y(i) != 1.0) {
      throw ValueError("response '" + dm.response + "' must be coded 0/1 for logit");
    }
  }
}

double loglik_eta(const Eigen::VectorXd& eta, const Eigen::VectorXd& y) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    ll += y(i) > 0.5 ? log_sigmoid(eta(i)) : log_sigmoid(-eta(i));
  }
  return ll;
}

}  // namespace

double logit_loglik(const Eigen::VectorXd& beta, const DesignMatrix& dm) {
  require_binary(dm);
  return loglik_eta(dm.X * beta, dm.y);
}

Eigen::VectorXd logit_gradient(const Eigen::VectorXd& beta, const DesignMatrix& dm) {
  require_binary(dm);
  const Eigen::VectorXd p = (dm.X * beta).unaryExpr([](double z) { return sigmoid(z); });
  return dm.X.transpose() * (dm.y - p);
}

Eigen::MatrixXd logit_hessian(const Eigen::VectorXd& beta, const DesignMatrix& dm) {
  require_binary(dm);
  const Eigen::VectorXd p = (dm.X * beta).unaryExpr([](double z) { return sigmoid(z); });
  const Eigen::VectorXd w = p.array() * (1.0 - p.array());
  return -(dm.X.transpose() * w.asDiagonal() * dm.X);
}

LogitFit fit_logit(const DesignMatrix& dm) {
  require_binary(dm);
  const Eigen::Index n = dm.n();
  const Eigen::Index k = dm.n_columns();
  if (n <= k) {
    throw ModelError("need more observations than design columns (n=" +
                     std::to_string(n) + ", columns=" + std::to_string(k) + ")");
  }
  const double ybar = dm.y.mean();
  if (ybar == 0.0 || ybar == 1.0) {
    throw ModelError("response is constant; both classes are required");
  }
  check_full_rank(dm.X, dm.columns);

  LogitFit fit;
  fit.design = dm;
  fit.loglik_null =
      static_cast<double>(n) * (ybar * std::log(ybar) + (1.0 - ybar) * std::log1p(-ybar));

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  double ll = loglik_eta(dm.X * beta, dm.y);
  bool singular_info = false;

  for (fit.iterations = 0; fit.iterations < kMaxIter; ++fit.iterations) {
    const Eigen::VectorXd eta = dm.X * beta;
    const Eigen::VectorXd p = eta.unaryExpr([](double z) { return sigmoid(z); });
    const Eigen::VectorXd grad = dm.X.transpose() * (dm.y - p);
    if (grad.lpNorm<Eigen::Infinity>() <= kGradTol) {
      fit.converged = true;
      break;
    }

    const Eigen::VectorXd w = p.array() * (1.0 - p.array());
    const Eigen::MatrixXd info = dm.X.transpose() * w.asDiagonal() * dm.X;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      singular_info = true;
      break;
    }
    const Eigen::VectorXd step = ldlt.solve(grad);

    double scale = 1.0;
    double ll_new = loglik_eta(dm.X * (beta + scale * step), dm.y);
    int halvings = 0;
    while (ll_new < ll && halvings < kMaxHalvings) {
      scale *= 0.5;
      ll_new = loglik_eta(dm.X * (beta + scale * step), dm.y);
      ++halvings;
    }
    if (ll_new < ll) break;  // no ascent direction left
    beta += scale * step;

    const double rel_change = std::abs(ll_new - ll) / std::max(1.0, std::abs(ll_new));
    ll = ll_new;
    if (rel_change <= kLoglikRelTol) {
      const Eigen::VectorXd g2 = logit_gradient(beta, dm);
      fit.converged = g2.lpNorm<Eigen::Infinity>() <= kGradTol;
      break;
    }
  }

  const Eigen::VectorXd grad_final = logit_gradient(beta, dm);
  const bool grad_ok = grad_final.lpNorm<Eigen::Infinity>() <= kGradTol;
  if (!grad_ok && (beta.lpNorm<Eigen::Infinity>() > kSeparationBeta || singular_info)) {
    throw ModelError(
        "separation: the classes are (quasi-)perfectly separable and the "
        "logit MLE does not exist");
  }
  if (!grad_ok && !fit.converged) {
    throw ModelError("logit fit did not converge in " + std::to_string(kMaxIter) +
                     " iterations");
  }
  fit.converged = true;

  fit.beta = beta;
  fit.loglik_full = ll;
  fit.fitted_prob = (dm.X * beta).unaryExpr([](double z) { return sigmoid(z); });

  const Eigen::VectorXd w = fit.fitted_prob.array() * (1.0 - fit.fitted_prob.array());
  const Eigen::MatrixXd info = dm.X.transpose() * w.asDiagonal() * dm.X;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
  if (ldlt.info() != Eigen::Success) {
    throw ModelError("observed information is singular at the optimum");
  }
  fit.info_inv = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
  fit.info_inv = 0.5 * (fit.info_inv + fit.info_inv.transpose()).eval();
  return fit;
}

std::vector<CoefRow> coef_table_logit(const LogitFit& fit, double alpha) {
  if (!fit.converged) throw ValueError("coefficient table requires a converged fit");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValueError("alpha must be in (0,1)");
  const double zq = dist::normal_quantile(1.0 - alpha / 2.0);
  std::vector<CoefRow> rows;
  for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
    CoefRow row;
    row.name = fit.design.columns[static_cast<std::size_t>(j)].name;
    row.estimate = fit.beta(j);
    row.se = std::sqrt(std::max(0.0, fit.info_inv(j, j)));
    if (row.se == 0.0) {
      row.degenerate = true;
      rows.push_back(row);
      continue;
    }
    row.stat = row.estimate / row.se;
    row.p = 2.0 * (1.0 - dist::normal_cdf(std::abs(row.stat)));
    row.ci_low = row.estimate - zq * row.se;
    row.ci_high = row.estimate + zq * row.se;
    rows.push_back(row);
  }
  return rows;
}

AmeRow average_marginal_effect(const LogitFit& fit, Eigen::Index column, double alpha) {
  if (!fit.converged) throw ValueError("marginal effects require a converged fit");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValueError("alpha must be in (0,1)");
  if (column < 1 || column >= fit.beta.size()) {
    throw ValueError("no such non-intercept design column: " + std::to_string(column));
  }
  const auto& info = fit.design.columns[static_cast<std::size_t>(column)];
  const Eigen::Index n = fit.design.n();
  const double inv_n = 1.0 / static_cast<double>(n);

  AmeRow row;
  row.name = info.name;
  row.discrete = !info.parts.empty() &&
                 std::all_of(info.parts.begin(), info.parts.end(),
                             [](const ColumnPart& p) { return p.is_dummy; });

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(fit.beta.size());
  if (row.discrete) {
    // Discrete difference: the column forced to 1 versus forced to 0.
    Eigen::MatrixXd X1 = fit.design.X;
    Eigen::MatrixXd X0 = fit.design.X;
    X1.col(column).setOnes();
    X0.col(column).setZero();
    const Eigen::VectorXd p1 =
        (X1 * fit.beta).unaryExpr([](double z) { return sigmoid(z); });
    const Eigen::VectorXd p0 =
        (X0 * fit.beta).unaryExpr([](double z) { return sigmoid(z); });
    row.ame = inv_n * (p1 - p0).sum();
    const Eigen::VectorXd w1 = p1.array() * (1.0 - p1.array());
    const Eigen::VectorXd w0 = p0.array() * (1.0 - p0.array());
    grad = inv_n * (X1.transpose() * w1 - X0.transpose() * w0);
  } else {
    const Eigen::VectorXd& p = fit.fitted_prob;
    const Eigen::VectorXd w = p.array() * (1.0 - p.array());
    const double wbar = inv_n * w.sum();
    const double bk = fit.beta(column);
    row.ame = wbar * bk;
    // d/db_j AME = (1/n) sum w_i (1-2p_i) x_ij b_k   (+ wbar when j == k)
    const Eigen::VectorXd ww = w.array() * (1.0 - 2.0 * p.array());
    grad = inv_n * bk * (fit.design.X.transpose() * ww);
    grad(column) += wbar;
  }

  const double var = grad.dot(fit.info_inv * grad);
  row.se = std::sqrt(std::max(0.0, var));
  const double zq = dist::normal_quantile(1.0 - alpha / 2.0);
  row.ci_low = row.ame - zq * row.se;
  row.ci_high = row.ame + zq * row.se;
  return row;
}

std::vector<AmeRow> marginal_effects(const LogitFit& fit, double alpha) {
  std::vector<AmeRow> rows;
  for (Eigen::Index j = 1; j < fit.beta.size(); ++j) {
    rows.push_back(average_marginal_effect(fit, j, alpha));
  }
  return rows;
}

double mcfadden_r2(const LogitFit& fit) {
  if (!fit.converged) throw ValueError("McFadden R^2 requires a converged fit");
  if (fit.loglik_null == 0.0) throw ValueError("null log-likelihood is zero");
  return 1.0 - fit.loglik_full / fit.loglik_null;
}

}  // namespace causaleval
