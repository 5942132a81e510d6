#ifndef CAUSALEVAL_ANOVA_HPP
#define CAUSALEVAL_ANOVA_HPP

#include <string>
#include <vector>

#include "causaleval/formula.hpp"
#include "causaleval/ols.hpp"

namespace causaleval {

struct AnovaRow {
  Term term;
  std::string label;
  double ss_effect = 0.0;
  int df_term = 0;
  double ss_error = 0.0;      // full-model error SS, repeated per row
  double eta2_partial = 0.0;  // ss_effect / (ss_effect + ss_error)
  double f_stat = 0.0;        // (ss_effect/df_term) / (ss_error/df_resid)
};

struct AnovaTable {
  std::vector<AnovaRow> rows;
  double total_ss = 0.0;     // centered total sum of squares
  double residual_ss = 0.0;  // full-model error SS
  double df_resid = 0.0;
};

enum class AnovaMethod {
  // SS_effect(T) = SS_error(model without T) - SS_error(full model), where
  // removing T also removes every term containing T's variables.
  model_comparison,
  // Audit variant following the single-term prediction reading: center y,
  // fit y ~ T alone, SS_effect = sum of squared predictions. Coincides with
  // model_comparison on orthogonal designs.
  literal_single_term,
};

AnovaTable anova_table(
    const ModelFormula& f, const Dataset& ds,
    AnovaMethod method = AnovaMethod::model_comparison,
    const std::map<std::string, std::string>& reference_overrides = {});

// Effect size from the R^2 increase when the factor enters the model:
// (r2_full - r2_reduced) / (1 - r2_reduced). Cross-checks the SS route.
double eta2_from_r2_delta(double r2_full, double r2_reduced);

}  // namespace causaleval

#endif  // CAUSALEVAL_ANOVA_HPP
