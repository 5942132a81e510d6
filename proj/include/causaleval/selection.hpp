#ifndef CAUSALEVAL_SELECTION_HPP
#define CAUSALEVAL_SELECTION_HPP

#include <string>
#include <utility>
#include <vector>

#include "causaleval/dataset.hpp"
#include "causaleval/formula.hpp"

namespace causaleval {

enum class Family { ols, logit };

std::string to_string(Family f);

// AIC = 2K - 2 l, K counting every estimated parameter.
double aic(int k_params, double loglik);

struct ComparisonRow {
  std::string formula;
  Family family = Family::ols;
  int k_params = 0;
  double loglik = 0.0;
  double aic_value = 0.0;
  double delta_aic = 0.0;
  bool ok = true;
  std::string error;  // set when the fit failed; row excluded from ranking
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;  // ranked rows first, ascending AIC
  int best = -1;                    // index of the winning row
};

// Fit every candidate and rank by AIC. For OLS the likelihood is the
// maximized Gaussian one with sigma^2 = RSS/n (K counts the coefficients
// plus sigma^2); for logit it is l(beta). Candidates must share the
// response, and families cannot be mixed: the likelihoods would not be
// commensurable. Failing fits are reported but not ranked.
ComparisonTable compare_models(
    const std::vector<std::pair<ModelFormula, Family>>& candidates,
    const Dataset& ds);

}  // namespace causaleval

#endif  // CAUSALEVAL_SELECTION_HPP
