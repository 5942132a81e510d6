#include "causaleval/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "causaleval/dist.hpp"
#include "causaleval/error.hpp"
#include "causaleval/rng.hpp"

namespace causaleval {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::warn: return "warn";
    case Verdict::fail: return "fail";
  }
  return "pass";
}

namespace {

// One-sample KS statistic against a CDF evaluated at sorted points.
double ks_statistic(const std::vector<double>& sorted_cdf_values) {
  const std::size_t n = sorted_cdf_values.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = sorted_cdf_values[i];
    d = std::max(d, static_cast<double>(i + 1) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

std::vector<double> ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;  // average rank for ties
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

CheckResult residual_vs_fitted(const OlsFit& fit, const DiagnosticsConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(fit.residuals.size());
  CheckResult out;
  out.name = "residual_vs_fitted";
  out.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.points.push_back({fit.fitted(static_cast<Eigen::Index>(i)),
                          fit.residuals(static_cast<Eigen::Index>(i))});
  }

  const std::size_t nbins = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return fit.fitted(static_cast<Eigen::Index>(a)) < fit.fitted(static_cast<Eigen::Index>(b));
  });

  const double s = std::sqrt(fit.s2);
  double worst = 0.0;  // max |bin mean| / threshold
  for (std::size_t b = 0; b < nbins; ++b) {
    const std::size_t lo = b * n / nbins;
    const std::size_t hi = (b + 1) * n / nbins;
    if (hi == lo) continue;
    double mean = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      mean += fit.residuals(static_cast<Eigen::Index>(order[i]));
    }
    mean /= static_cast<double>(hi - lo);
    const double threshold = cfg.bin_sigma * s / std::sqrt(static_cast<double>(hi - lo));
    if (threshold > 0.0) {
      worst = std::max(worst, std::abs(mean) / threshold);
    } else if (mean != 0.0) {
      worst = std::numeric_limits<double>::infinity();
    }
  }
  out.stats["bins"] = static_cast<double>(nbins);
  out.stats["worst_bin_ratio"] = worst;
  out.verdict = worst > 1.0 ? Verdict::fail : Verdict::pass;
  return out;
}

CheckResult normality_check(const OlsFit& fit, const DiagnosticsConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(fit.residuals.size());
  if (n < 3) throw ValueError("normality check requires n >= 3");
  const double s = std::sqrt(fit.s2);
  if (s == 0.0) throw ValueError("normality check is undefined for an exact fit (s = 0)");

  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = fit.residuals(static_cast<Eigen::Index>(i)) / s;
  }
  std::sort(z.begin(), z.end());

  CheckResult out;
  out.name = "normality";
  out.points.reserve(n);
  std::vector<double> cdf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pp = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out.points.push_back({dist::normal_quantile(pp), z[i]});
    cdf[i] = dist::normal_cdf(z[i]);
  }
  const double d = ks_statistic(cdf);
  const double p = dist::kolmogorov_pvalue(d, n);
  out.stats["ks"] = d;
  out.stats["p"] = p;
  out.verdict = p < cfg.ks_alpha ? Verdict::warn : Verdict::pass;
  return out;
}

CheckResult vif(const DesignMatrix& dm, const DiagnosticsConfig& cfg) {
  const Eigen::Index k = dm.n_columns();
  if (k < 3) throw ValueError("VIF requires at least two non-intercept columns");
  const double inf = std::numeric_limits<double>::infinity();

  CheckResult out;
  out.name = "vif";
  out.verdict = Verdict::pass;
  for (Eigen::Index j = 1; j < k; ++j) {
    // Auxiliary regression of column j on the others (intercept included).
    Eigen::MatrixXd other(dm.X.rows(), k - 1);
    Eigen::Index c = 0;
    for (Eigen::Index m = 0; m < k; ++m) {
      if (m != j) other.col(c++) = dm.X.col(m);
    }
    const Eigen::VectorXd target = dm.X.col(j);
    // The pivoted QR solve tolerates rank deficiency among the other
    // columns; fitted values are still the projection.
    const Eigen::VectorXd coef = other.colPivHouseholderQr().solve(target);
    const Eigen::VectorXd resid = target - other * coef;
    const double mean = target.mean();
    const double ss_tot = (target.array() - mean).matrix().squaredNorm();
    const double rss = resid.squaredNorm();

    double v;
    if (ss_tot == 0.0) {
      v = inf;  // constant column duplicated by the intercept
    } else {
      const double r2 = 1.0 - rss / ss_tot;
      v = r2 >= 1.0 - 1e-12 ? inf : 1.0 / (1.0 - r2);
    }
    const std::string& name = dm.columns[static_cast<std::size_t>(j)].name;
    out.stats[name] = v;
    out.points.push_back({static_cast<double>(j), v});
    if (v > cfg.vif_fail) {
      out.verdict = Verdict::fail;
    } else if (v > cfg.vif_warn && out.verdict == Verdict::pass) {
      out.verdict = Verdict::warn;
    }
  }
  return out;
}

CheckResult scale_location(const OlsFit& fit, const DiagnosticsConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(fit.residuals.size());
  const double s = std::sqrt(fit.s2);

  CheckResult out;
  out.name = "scale_location";
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = fit.hat_diag(static_cast<Eigen::Index>(i));
    if (h >= 1.0 - 1e-12) {
      out.flagged.push_back(i);  // exact-leverage point, excluded
      continue;
    }
    const double e = fit.residuals(static_cast<Eigen::Index>(i));
    const double t = s > 0.0 ? std::sqrt(std::abs(e / (s * std::sqrt(1.0 - h)))) : 0.0;
    xs.push_back(fit.fitted(static_cast<Eigen::Index>(i)));
    ys.push_back(t);
    out.points.push_back({xs.back(), t});
  }
  const double rho = xs.size() >= 2 ? spearman_rho(xs, ys) : 0.0;
  const double threshold = 2.58 / std::sqrt(static_cast<double>(xs.size()));
  out.stats["spearman_rho"] = rho;
  out.stats["threshold"] = threshold;
  out.verdict = std::abs(rho) > threshold ? Verdict::fail : Verdict::pass;
  return out;
}

CheckResult influence(const OlsFit& fit, const DiagnosticsConfig& cfg) {
  const std::size_t n = static_cast<std::size_t>(fit.residuals.size());
  const double k = static_cast<double>(fit.design.n_columns());

  CheckResult out;
  out.name = "influence";
  const double lev_cut = cfg.leverage_mult * k / static_cast<double>(n);
  const double cook_cut = cfg.cooks_mult / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = fit.hat_diag(static_cast<Eigen::Index>(i));
    const double e = fit.residuals(static_cast<Eigen::Index>(i));
    // D_i = e_i^2 H_ii / (K s^2 (1-H_ii)^2)
    double d = 0.0;
    if (e != 0.0) {
      const double denom = k * fit.s2 * (1.0 - h) * (1.0 - h);
      d = denom > 0.0 ? e * e * h / denom : std::numeric_limits<double>::infinity();
    }
    out.points.push_back({h, d});
    if (h > lev_cut || d > cook_cut) out.flagged.push_back(i);
  }
  out.stats["leverage_threshold"] = lev_cut;
  out.stats["cooks_threshold"] = cook_cut;
  out.verdict = out.flagged.empty() ? Verdict::pass : Verdict::warn;
  return out;
}

SimulatedResiduals simulate_quantile_residuals(const LogitFit& fit, int n_sim,
                                               std::uint64_t seed, int n_threads) {
  if (!fit.converged) throw ValueError("quantile residuals require a converged fit");
  if (n_sim < 50) throw ValueError("n_sim must be at least 50");
  const std::size_t n = static_cast<std::size_t>(fit.fitted_prob.size());

  SimulatedResiduals sim;
  sim.n_sim = n_sim;
  sim.seed = seed;
  sim.quantiles.resize(n);

  // Every observation draws from its own derived stream, so the result is
  // independent of the execution order.
  auto simulate_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Rng rng = Rng::stream(seed, i);
      const double p = fit.fitted_prob(static_cast<Eigen::Index>(i));
      int zeros = 0;
      for (int r = 0; r < n_sim; ++r) {
        if (!rng.bernoulli(p)) ++zeros;
      }
      const double f0 = static_cast<double>(zeros) / n_sim;  // simulated P(y* = 0)
      const double u = rng.uniform();
      const double y = fit.design.y(static_cast<Eigen::Index>(i));
      sim.quantiles[i] = y > 0.5 ? f0 + u * (1.0 - f0) : u * f0;
    }
  };

  if (n_threads <= 1) {
    simulate_range(0, n);
  } else {
    const std::size_t chunks = static_cast<std::size_t>(n_threads);
    std::vector<std::future<void>> futures;
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t lo = c * n / chunks;
      const std::size_t hi = (c + 1) * n / chunks;
      futures.push_back(std::async(std::launch::async, simulate_range, lo, hi));
    }
    for (auto& f : futures) f.get();
  }
  return sim;
}

CheckResult uniformity_check(const SimulatedResiduals& sim, const DiagnosticsConfig& cfg) {
  CheckResult out;
  out.name = "uniformity";
  std::vector<double> sorted = sim.quantiles;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    out.points.push_back({(static_cast<double>(i) + 0.5) / n, sorted[i]});
  }
  const double d = ks_statistic(sorted);  // uniform CDF is the identity
  const double p = dist::kolmogorov_pvalue(d, n);
  out.stats["ks"] = d;
  out.stats["p"] = p;
  out.stats["n_sim"] = sim.n_sim;
  out.verdict = p < cfg.ks_alpha ? Verdict::fail : Verdict::pass;
  return out;
}

std::vector<CheckResult> ols_diagnostics(const OlsFit& fit, const DiagnosticsConfig& cfg) {
  std::vector<CheckResult> checks;
  checks.push_back(residual_vs_fitted(fit, cfg));
  if (fit.residuals.size() >= 3 && fit.s2 > 0.0) {
    checks.push_back(normality_check(fit, cfg));
  }
  if (fit.design.n_columns() >= 3) {
    checks.push_back(vif(fit.design, cfg));
  }
  checks.push_back(scale_location(fit, cfg));
  checks.push_back(influence(fit, cfg));
  return checks;
}

std::vector<CheckResult> logit_diagnostics(const LogitFit& fit, int n_sim,
                                           std::uint64_t seed, int n_threads,
                                           const DiagnosticsConfig& cfg) {
  const SimulatedResiduals sim = simulate_quantile_residuals(fit, n_sim, seed, n_threads);
  return {uniformity_check(sim, cfg)};
}

}  // namespace causaleval
