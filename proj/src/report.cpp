#include "causaleval/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "causaleval/error.hpp"

namespace causaleval {

std::string dataset_digest(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

namespace {

// Infinite statistics become strings so the JSON stays standard.
nlohmann::json encode_stat(double v) {
  if (std::isnan(v)) throw ValueError("NaN is not representable in a report");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json encode_points(const std::vector<std::array<double, 2>>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pts) arr.push_back({encode_stat(p[0]), encode_stat(p[1])});
  return arr;
}

nlohmann::json encode_coef_rows(const std::vector<CoefRow>& rows, const char* stat_name) {
  nlohmann::json arr = nlohmann::json::array();
  for (const CoefRow& r : rows) {
    nlohmann::json row;
    row["term"] = r.name;
    row["estimate"] = encode_stat(r.estimate);
    row["degenerate"] = r.degenerate;
    if (!r.degenerate) {
      row["se"] = encode_stat(r.se);
      row[stat_name] = encode_stat(r.stat);
      row["p"] = encode_stat(r.p);
      row["ci_low"] = encode_stat(r.ci_low);
      row["ci_high"] = encode_stat(r.ci_high);
    }
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace

nlohmann::json section_coefficients(const std::vector<CoefRow>& rows, Family family,
                                    const OlsFit* ols, const LogitFit* logit) {
  nlohmann::json s;
  s["family"] = to_string(family);
  s["rows"] = encode_coef_rows(rows, family == Family::ols ? "t" : "z");
  if (family == Family::ols && ols != nullptr) {
    s["r2"] = encode_stat(ols->r2);
    s["r2_adj"] = encode_stat(ols->r2_adj);
    s["s2"] = encode_stat(ols->s2);
    s["df_resid"] = encode_stat(ols->df_resid);
    s["n"] = static_cast<std::int64_t>(ols->design.n());
    // Homoscedastic covariance only; robust alternatives are out of scope.
    s["covariance"] = "homoscedastic";
  }
  if (family == Family::logit && logit != nullptr) {
    s["loglik"] = encode_stat(logit->loglik_full);
    s["loglik_null"] = encode_stat(logit->loglik_null);
    s["mcfadden_r2"] = encode_stat(mcfadden_r2(*logit));
    s["iterations"] = logit->iterations;
    s["n"] = static_cast<std::int64_t>(logit->design.n());
  }
  return s;
}

nlohmann::json section_anova(const AnovaTable& table) {
  nlohmann::json s;
  nlohmann::json rows = nlohmann::json::array();
  for (const AnovaRow& r : table.rows) {
    nlohmann::json row;
    row["term"] = r.label;
    row["ss_effect"] = encode_stat(r.ss_effect);
    row["df"] = r.df_term;
    row["ss_error"] = encode_stat(r.ss_error);
    row["eta2_partial"] = encode_stat(r.eta2_partial);
    row["f"] = encode_stat(r.f_stat);
    rows.push_back(std::move(row));
  }
  s["rows"] = std::move(rows);
  s["total_ss"] = encode_stat(table.total_ss);
  s["residual_ss"] = encode_stat(table.residual_ss);
  s["df_resid"] = encode_stat(table.df_resid);
  return s;
}

nlohmann::json section_diagnostics(const std::vector<CheckResult>& checks) {
  nlohmann::json s;
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    nlohmann::json check;
    check["name"] = c.name;
    check["verdict"] = to_string(c.verdict);
    nlohmann::json stats;
    for (const auto& [k, v] : c.stats) stats[k] = encode_stat(v);
    check["stats"] = std::move(stats);
    check["points"] = encode_points(c.points);
    check["flagged"] = c.flagged;
    arr.push_back(std::move(check));
  }
  s["checks"] = std::move(arr);
  return s;
}

nlohmann::json section_comparison(const ComparisonTable& table) {
  nlohmann::json s;
  nlohmann::json rows = nlohmann::json::array();
  for (const ComparisonRow& r : table.rows) {
    nlohmann::json row;
    row["formula"] = r.formula;
    row["family"] = to_string(r.family);
    if (r.ok) {
      row["k"] = r.k_params;
      row["loglik"] = encode_stat(r.loglik);
      row["aic"] = encode_stat(r.aic_value);
      row["delta_aic"] = encode_stat(r.delta_aic);
    } else {
      row["error"] = r.error;
    }
    rows.push_back(std::move(row));
  }
  s["rows"] = std::move(rows);
  s["best"] = table.best;
  return s;
}

nlohmann::json section_marginal_effects(const std::vector<AmeRow>& rows) {
  nlohmann::json s;
  nlohmann::json arr = nlohmann::json::array();
  for (const AmeRow& r : rows) {
    nlohmann::json row;
    row["term"] = r.name;
    row["ame"] = encode_stat(r.ame);
    row["se"] = encode_stat(r.se);
    row["ci_low"] = encode_stat(r.ci_low);
    row["ci_high"] = encode_stat(r.ci_high);
    row["discrete"] = r.discrete;
    arr.push_back(std::move(row));
  }
  s["rows"] = std::move(arr);
  return s;
}

namespace {

void dump_string(const std::string& s, std::string* out) {
  out->push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': *out += "\\\""; break;
      case '\\': *out += "\\\\"; break;
      case '\b': *out += "\\b"; break;
      case '\f': *out += "\\f"; break;
      case '\n': *out += "\\n"; break;
      case '\r': *out += "\\r"; break;
      case '\t': *out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          *out += buf;
        } else {
          out->push_back(static_cast<char>(c));
        }
    }
  }
  out->push_back('"');
}

void dump_double(double v, std::string* out) {
  if (!std::isfinite(v)) throw ValueError("non-finite number in report JSON");
  // 17 significant digits: enough for an exact double round-trip, and
  // locale-independent through to_chars.
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out->append(buf, res.ptr);
}

void dump_canonical(const nlohmann::json& j, std::string* out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out->push_back('{');
      bool first = true;
      // nlohmann objects iterate in sorted key order already.
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out->push_back(',');
        first = false;
        dump_string(it.key(), out);
        out->push_back(':');
        dump_canonical(it.value(), out);
      }
      out->push_back('}');
      break;
    }
    case nlohmann::json::value_t::array: {
      out->push_back('[');
      bool first = true;
      for (const auto& v : j) {
        if (!first) out->push_back(',');
        first = false;
        dump_canonical(v, out);
      }
      out->push_back(']');
      break;
    }
    case nlohmann::json::value_t::string:
      dump_string(j.get<std::string>(), out);
      break;
    case nlohmann::json::value_t::boolean:
      *out += j.get<bool>() ? "true" : "false";
      break;
    case nlohmann::json::value_t::number_integer:
      *out += std::to_string(j.get<std::int64_t>());
      break;
    case nlohmann::json::value_t::number_unsigned:
      *out += std::to_string(j.get<std::uint64_t>());
      break;
    case nlohmann::json::value_t::number_float:
      dump_double(j.get<double>(), out);
      break;
    case nlohmann::json::value_t::null:
      *out += "null";
      break;
    default:
      throw ValueError("unsupported JSON value in report");
  }
}

}  // namespace

std::string render_json(const Report& report) {
  nlohmann::json root;
  nlohmann::json meta;
  meta["tool_version"] = report.meta.tool_version;
  meta["dataset_digest"] = report.meta.dataset_digest;
  meta["seed"] = report.meta.seed;
  meta["alpha"] = report.meta.alpha;
  meta["timestamp"] = report.meta.timestamp;
  root["meta"] = std::move(meta);
  nlohmann::json sections = nlohmann::json::array();
  for (const auto& [kind, payload] : report.sections) {
    nlohmann::json s;
    s["kind"] = kind;
    s["payload"] = payload;
    sections.push_back(std::move(s));
  }
  root["sections"] = std::move(sections);

  std::string out;
  dump_canonical(root, &out);
  out.push_back('\n');
  return out;
}

namespace {

// Fixed-point with 4 decimals, locale-independent. Infinities render as
// "inf"/"-inf".
std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

std::string format_cell(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

// Right-align numbers, left-align text.
void append_table(const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& cells,
                  const std::vector<bool>& numeric, std::string* out) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) *out += "  ";
      const std::size_t pad = width[c] - row[c].size();
      if (numeric[c]) {
        out->append(pad, ' ');
        *out += row[c];
      } else {
        *out += row[c];
        if (c + 1 < row.size()) out->append(pad, ' ');
      }
    }
    out->push_back('\n');
  };
  emit_row(header);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) *out += "  ";
    out->append(width[c], '-');
  }
  out->push_back('\n');
  for (const auto& row : cells) emit_row(row);
}

void render_coefficients(const nlohmann::json& s, std::string* out) {
  const bool is_ols = s.at("family").get<std::string>() == "ols";
  const char* stat = is_ols ? "t" : "z";
  *out += "Coefficients (" + s.at("family").get<std::string>() + ")\n";
  std::vector<std::string> header{"term", "estimate", "se", stat, "p", "ci_low", "ci_high", ""};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : s.at("rows")) {
    std::vector<std::string> row;
    row.push_back(r.at("term").get<std::string>());
    row.push_back(format_cell(r.at("estimate")));
    if (r.at("degenerate").get<bool>()) {
      row.insert(row.end(), {"-", "-", "-", "-", "-", "(degenerate)"});
    } else {
      row.push_back(format_cell(r.at("se")));
      row.push_back(format_cell(r.at(stat)));
      row.push_back(format_cell(r.at("p")));
      const double lo = r.at("ci_low").get<double>();
      const double hi = r.at("ci_high").get<double>();
      row.push_back(format_number(lo));
      row.push_back(format_number(hi));
      row.push_back(lo > 0.0 || hi < 0.0 ? "*" : "");
    }
    rows.push_back(std::move(row));
  }
  append_table(header, rows,
               {false, true, true, true, true, true, true, false}, out);
  if (is_ols) {
    *out += "R^2 = " + format_number(s.at("r2").get<double>()) +
            "  adj. R^2 = " + format_number(s.at("r2_adj").get<double>()) +
            "  s^2 = " + format_number(s.at("s2").get<double>()) +
            "  df = " + format_number(s.at("df_resid").get<double>()) + "\n";
    *out += "(homoscedastic covariance; robust errors not implemented)\n";
  } else {
    *out += "loglik = " + format_number(s.at("loglik").get<double>()) +
            "  McFadden R^2 = " + format_number(s.at("mcfadden_r2").get<double>()) + "\n";
  }
}

void render_anova(const nlohmann::json& s, std::string* out) {
  *out += "ANOVA\n";
  std::vector<std::string> header{"term", "ss_effect", "df", "eta2_partial", "F"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : s.at("rows")) {
    rows.push_back({r.at("term").get<std::string>(), format_cell(r.at("ss_effect")),
                    format_cell(r.at("df")), format_cell(r.at("eta2_partial")),
                    format_cell(r.at("f"))});
  }
  append_table(header, rows, {false, true, true, true, true}, out);
  *out += "residual SS = " + format_cell(s.at("residual_ss")) +
          "  total SS = " + format_cell(s.at("total_ss")) +
          "  df = " + format_cell(s.at("df_resid")) + "\n";
}

void render_diagnostics(const nlohmann::json& s, std::string* out) {
  *out += "Diagnostics\n";
  std::vector<std::string> header{"check", "verdict", "details"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : s.at("checks")) {
    std::string details;
    for (auto it = c.at("stats").begin(); it != c.at("stats").end(); ++it) {
      if (!details.empty()) details += "  ";
      details += it.key() + "=" + format_cell(it.value());
    }
    const auto& flagged = c.at("flagged");
    if (!flagged.empty()) {
      details += details.empty() ? "" : "  ";
      details += "flagged=" + std::to_string(flagged.size());
    }
    rows.push_back({c.at("name").get<std::string>(),
                    c.at("verdict").get<std::string>(), details});
  }
  append_table(header, rows, {false, false, false}, out);
}

void render_comparison(const nlohmann::json& s, std::string* out) {
  *out += "Model comparison (AIC)\n";
  std::vector<std::string> header{"formula", "K", "loglik", "AIC", "dAIC"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : s.at("rows")) {
    if (r.contains("error")) {
      rows.push_back({r.at("formula").get<std::string>(), "-", "-", "-",
                      "error: " + r.at("error").get<std::string>()});
    } else {
      rows.push_back({r.at("formula").get<std::string>(), format_cell(r.at("k")),
                      format_cell(r.at("loglik")), format_cell(r.at("aic")),
                      format_cell(r.at("delta_aic"))});
    }
  }
  append_table(header, rows, {false, true, true, true, true}, out);
}

void render_marginal_effects(const nlohmann::json& s, std::string* out) {
  *out += "Average marginal effects\n";
  std::vector<std::string> header{"term", "AME", "se", "ci_low", "ci_high", "kind"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : s.at("rows")) {
    rows.push_back({r.at("term").get<std::string>(), format_cell(r.at("ame")),
                    format_cell(r.at("se")), format_cell(r.at("ci_low")),
                    format_cell(r.at("ci_high")),
                    r.at("discrete").get<bool>() ? "discrete" : "derivative"});
  }
  append_table(header, rows, {false, true, true, true, true, false}, out);
}

}  // namespace

std::string render_text(const Report& report) {
  std::string out;
  out += "causaleval " + report.meta.tool_version +
         "  dataset " + report.meta.dataset_digest +
         "  seed " + std::to_string(report.meta.seed) +
         "  alpha " + format_number(report.meta.alpha) + "\n";
  for (const auto& [kind, payload] : report.sections) {
    out += "\n";
    if (kind == "coefficients") {
      render_coefficients(payload, &out);
    } else if (kind == "anova") {
      render_anova(payload, &out);
    } else if (kind == "diagnostics") {
      render_diagnostics(payload, &out);
    } else if (kind == "comparison") {
      render_comparison(payload, &out);
    } else if (kind == "marginal_effects") {
      render_marginal_effects(payload, &out);
    } else {
      out += kind + ": " + payload.dump() + "\n";
    }
  }
  return out;
}

}  // namespace causaleval
