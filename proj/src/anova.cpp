#include "causaleval/anova.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "causaleval/error.hpp"

namespace causaleval {

namespace {

bool subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  // both sorted
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

double reduced_rss(const ModelFormula& f, const Term& removed, const Dataset& ds,
                   const std::map<std::string, std::string>& refs, double total_ss) {
  ModelFormula reduced;
  reduced.response = f.response;
  for (const Term& t : f.terms) {
    // Marginality: dropping T drops every term whose variables contain T's.
    if (!subset(removed.variables, t.variables)) reduced.terms.push_back(t);
  }
  if (reduced.terms.empty()) {
    return total_ss;  // intercept-only model
  }
  const OlsFit fit = fit_ols(build_design_matrix(reduced, ds, refs));
  return fit.residuals.squaredNorm();
}

}  // namespace

AnovaTable anova_table(const ModelFormula& f, const Dataset& ds, AnovaMethod method,
                       const std::map<std::string, std::string>& reference_overrides) {
  if (f.terms.empty()) throw ValueError("anova requires at least one term");

  const DesignMatrix full_dm = build_design_matrix(f, ds, reference_overrides);
  const OlsFit full = fit_ols(full_dm);

  AnovaTable table;
  table.residual_ss = full.residuals.squaredNorm();
  table.df_resid = full.df_resid;
  const double mean_y = full_dm.y.mean();
  table.total_ss = (full_dm.y.array() - mean_y).matrix().squaredNorm();

  std::vector<std::future<double>> per_term(f.terms.size());
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const Term& term = f.terms[i];
    if (method == AnovaMethod::model_comparison) {
      per_term[i] = std::async(std::launch::async, [&, term] {
        return reduced_rss(f, term, ds, reference_overrides, table.total_ss) -
               table.residual_ss;
      });
    } else {
      per_term[i] = std::async(std::launch::async, [&, term] {
        // Single-term fit on centered y; predictions are deviations from the
        // mean, so SS_effect is their sum of squares.
        ModelFormula single;
        single.response = f.response;
        single.terms = {term};
        DesignMatrix dm = build_design_matrix(single, ds, reference_overrides);
        dm.y.array() -= mean_y;
        const OlsFit fit = fit_ols(dm);
        return fit.fitted.squaredNorm();
      });
    }
  }

  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const Term& term = f.terms[i];
    AnovaRow row;
    row.term = term;
    row.label = term.label();
    row.ss_effect = std::max(0.0, per_term[i].get());
    const auto span = full_dm.term_spans.at(term);
    row.df_term = span.second - span.first;
    if (method == AnovaMethod::model_comparison) {
      // df of the comparison counts every removed column.
      int df = 0;
      for (const Term& t : f.terms) {
        if (subset(term.variables, t.variables)) {
          const auto s = full_dm.term_spans.at(t);
          df += s.second - s.first;
        }
      }
      row.df_term = df;
    }
    row.ss_error = table.residual_ss;
    const double denom = row.ss_effect + table.residual_ss;
    row.eta2_partial = denom > 0.0 ? row.ss_effect / denom : 0.0;
    row.f_stat = table.residual_ss > 0.0
                     ? (row.ss_effect / row.df_term) / (table.residual_ss / full.df_resid)
                     : std::numeric_limits<double>::infinity();
    table.rows.push_back(std::move(row));
  }
  return table;
}

double eta2_from_r2_delta(double r2_full, double r2_reduced) {
  if (!(r2_reduced >= 0.0 && r2_full <= 1.0)) {
    throw ValueError("R^2 values must lie in [0,1]");
  }
  if (r2_reduced > r2_full) {
    throw ValueError("reduced-model R^2 exceeds full-model R^2 (marginality violation)");
  }
  const double denom = 1.0 - r2_reduced;
  if (denom == 0.0) return 0.0;  // reduced model already explains everything
  return (r2_full - r2_reduced) / denom;
}

}  // namespace causaleval
