#include "causaleval/selection.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "causaleval/error.hpp"
#include "causaleval/logit.hpp"
#include "causaleval/ols.hpp"

namespace causaleval {

std::string to_string(Family f) { return f == Family::ols ? "ols" : "logit"; }

double aic(int k_params, double loglik) {
  if (k_params < 1) throw ValueError("aic requires at least one parameter");
  return 2.0 * k_params - 2.0 * loglik;
}

ComparisonTable compare_models(
    const std::vector<std::pair<ModelFormula, Family>>& candidates, const Dataset& ds) {
  if (candidates.empty()) throw ValueError("no candidate models");
  const std::string& response = candidates.front().first.response;
  const Family family = candidates.front().second;
  for (const auto& [f, fam] : candidates) {
    if (f.response != response) {
      throw ValueError("candidates must share the response ('" + f.response +
                       "' vs '" + response + "')");
    }
    if (fam != family) {
      throw ValueError("cannot compare OLS and logit fits: likelihoods are not "
                       "commensurable across response types");
    }
  }

  auto fit_one = [&ds](const ModelFormula& f, Family fam) {
    ComparisonRow row;
    row.formula = canonical_string(f);
    row.family = fam;
    try {
      const DesignMatrix dm = build_design_matrix(f, ds);
      if (fam == Family::ols) {
        const OlsFit fit = fit_ols(dm);
        const double n = static_cast<double>(dm.n());
        const double rss = fit.residuals.squaredNorm();
        if (rss <= 0.0) {
          throw ModelError("exact fit: the Gaussian likelihood is unbounded");
        }
        const double sigma2 = rss / n;
        row.loglik = -0.5 * n * (std::log(2.0 * M_PI * sigma2) + 1.0);
        row.k_params = static_cast<int>(dm.n_columns()) + 1;  // + sigma^2
      } else {
        const LogitFit fit = fit_logit(dm);
        row.loglik = fit.loglik_full;
        row.k_params = static_cast<int>(dm.n_columns());
      }
      row.aic_value = aic(row.k_params, row.loglik);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    return row;
  };

  std::vector<std::future<ComparisonRow>> futures;
  futures.reserve(candidates.size());
  for (const auto& [f, fam] : candidates) {
    futures.push_back(std::async(std::launch::async, fit_one, f, fam));
  }

  std::vector<ComparisonRow> ranked;
  std::vector<ComparisonRow> failed;
  for (auto& fut : futures) {
    ComparisonRow row = fut.get();
    (row.ok ? ranked : failed).push_back(std::move(row));
  }

  std::sort(ranked.begin(), ranked.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.aic_value != b.aic_value) return a.aic_value < b.aic_value;
    if (a.k_params != b.k_params) return a.k_params < b.k_params;
    return a.formula < b.formula;
  });

  ComparisonTable table;
  if (!ranked.empty()) {
    const double best_aic = ranked.front().aic_value;
    for (auto& row : ranked) row.delta_aic = row.aic_value - best_aic;
    table.best = 0;
  }
  table.rows = std::move(ranked);
  for (auto& row : failed) {
    row.delta_aic = std::numeric_limits<double>::quiet_NaN();
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace causaleval
