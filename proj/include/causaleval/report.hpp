#ifndef CAUSALEVAL_REPORT_HPP
#define CAUSALEVAL_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "causaleval/anova.hpp"
#include "causaleval/diagnostics.hpp"
#include "causaleval/logit.hpp"
#include "causaleval/ols.hpp"
#include "causaleval/selection.hpp"

namespace causaleval {

inline constexpr const char* kToolVersion = "0.1.0";

// Assembled analysis output. Section payloads are JSON values built by the
// section_* helpers; the same report renders to canonical JSON and to
// aligned text tables.
struct Report {
  struct Meta {
    std::string tool_version = kToolVersion;
    std::string dataset_digest;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    // Left empty by default so identical inputs render identical bytes;
    // callers may stamp one in when reproducibility does not matter.
    std::string timestamp;
  } meta;
  std::vector<std::pair<std::string, nlohmann::json>> sections;
};

// FNV-1a (64-bit) over the raw input bytes, rendered as "fnv1a64:<hex>".
std::string dataset_digest(std::string_view bytes);

// Section builders. Non-finite statistics are encoded as the strings
// "inf"/"-inf"; NaN never appears in a payload.
nlohmann::json section_coefficients(const std::vector<CoefRow>& rows, Family family,
                                    const OlsFit* ols, const LogitFit* logit);
nlohmann::json section_anova(const AnovaTable& table);
nlohmann::json section_diagnostics(const std::vector<CheckResult>& checks);
nlohmann::json section_comparison(const ComparisonTable& table);
nlohmann::json section_marginal_effects(const std::vector<AmeRow>& rows);

// Canonical JSON bytes: object keys sorted, numbers with 17 significant
// digits (exact double round-trip), UTF-8, newline-terminated. Identical
// reports render identical bytes.
std::string render_json(const Report& report);

// Fixed-width text tables, 4 decimal places, numeric columns right-aligned.
// Coefficient rows are starred when the CI excludes 0.
std::string render_text(const Report& report);

}  // namespace causaleval

#endif  // CAUSALEVAL_REPORT_HPP
