#ifndef CAUSALEVAL_DIAGNOSTICS_HPP
#define CAUSALEVAL_DIAGNOSTICS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "causaleval/logit.hpp"
#include "causaleval/ols.hpp"

namespace causaleval {

enum class Verdict { pass, warn, fail };

std::string to_string(Verdict v);

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::map<std::string, double> stats;           // named statistics
  std::vector<std::array<double, 2>> points;     // plot-ready (x,y) series
  std::vector<std::size_t> flagged;              // observation indices
};

// Thresholds behind the verdicts. The VIF cutoffs 5/10 are the conventional
// ones; the rest are standard defaults.
struct DiagnosticsConfig {
  double bin_sigma = 3.0;       // binned-mean test multiplier
  double vif_warn = 5.0;
  double vif_fail = 10.0;
  double leverage_mult = 2.0;   // flag H_ii > leverage_mult * K / n
  double cooks_mult = 4.0;      // flag D_i > cooks_mult / n
  double ks_alpha = 0.01;
};

// Linearity: (fitted, residual) points; the fitted values are split into
// floor(sqrt(n)) equal-count bins and the check fails when some bin's mean
// residual exceeds bin_sigma * s / sqrt(bin size).
CheckResult residual_vs_fitted(const OlsFit& fit, const DiagnosticsConfig& cfg = {});

// Normality: QQ series of standardized residuals against normal quantiles
// at plotting positions (i - 0.5)/n, with a KS test. Deviations warn rather
// than fail; the plot is the primary evidence.
CheckResult normality_check(const OlsFit& fit, const DiagnosticsConfig& cfg = {});

// Multicollinearity: VIF_j = 1/(1 - R^2_j) from regressing column j on the
// remaining columns. Perfectly collinear columns report an infinity
// sentinel. Requires at least two non-intercept columns.
CheckResult vif(const DesignMatrix& dm, const DiagnosticsConfig& cfg = {});

// Homoscedasticity: (fitted, sqrt|studentized residual|) points with a
// Spearman rank-correlation verdict, |rho| > 2.58/sqrt(n) failing.
// Exact-leverage observations (H_ii = 1) are flagged and excluded.
CheckResult scale_location(const OlsFit& fit, const DiagnosticsConfig& cfg = {});

// Influence: per-observation (leverage, Cook's distance); flags leverage
// above leverage_mult*K/n and distance above cooks_mult/n.
CheckResult influence(const OlsFit& fit, const DiagnosticsConfig& cfg = {});

struct SimulatedResiduals {
  std::vector<double> quantiles;  // in [0,1], one per observation
  int n_sim = 0;
  std::uint64_t seed = 0;
};

// Simulation-based quantile residuals for a logit fit: n_sim Bernoulli
// replicates per observation, the observed outcome placed uniformly inside
// its bracket of the simulated CDF. Uniform on [0,1] when the model is
// correct. Deterministic given (fit, n_sim, seed): each observation draws
// from its own stream, so serial and threaded runs agree bit for bit.
SimulatedResiduals simulate_quantile_residuals(const LogitFit& fit, int n_sim,
                                               std::uint64_t seed, int n_threads = 1);

// Uniformity KS check on simulated quantile residuals.
CheckResult uniformity_check(const SimulatedResiduals& sim,
                             const DiagnosticsConfig& cfg = {});

// The default OLS suite: linearity, normality (when s > 0), VIF (when at
// least two non-intercept columns), scale-location, influence.
std::vector<CheckResult> ols_diagnostics(const OlsFit& fit,
                                         const DiagnosticsConfig& cfg = {});

// The logit route: simulated quantile residuals with the uniformity check
// only. Classical residual checks do not transfer to binary responses.
std::vector<CheckResult> logit_diagnostics(const LogitFit& fit, int n_sim,
                                           std::uint64_t seed, int n_threads = 1,
                                           const DiagnosticsConfig& cfg = {});

}  // namespace causaleval

#endif  // CAUSALEVAL_DIAGNOSTICS_HPP
