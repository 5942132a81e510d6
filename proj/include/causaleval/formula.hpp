#ifndef CAUSALEVAL_FORMULA_HPP
#define CAUSALEVAL_FORMULA_HPP

#include <Eigen/Dense>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causaleval/dataset.hpp"

namespace causaleval {

// One right-hand-side term: a main effect (single variable) or an
// interaction (two or more distinct variables, kept sorted).
struct Term {
  std::vector<std::string> variables;

  bool main_effect() const { return variables.size() == 1; }
  std::string label() const;  // variables joined with ':'

  // Canonical order: main effects before interactions, then lexicographic.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.variables.size() != b.variables.size()) {
      return a.variables.size() <=> b.variables.size();
    }
    return a.variables <=> b.variables;
  }
  friend bool operator==(const Term& a, const Term& b) = default;
};

struct ModelFormula {
  std::string response;
  std::vector<Term> terms;  // canonical order, no duplicates

  friend bool operator==(const ModelFormula&, const ModelFormula&) = default;
};

// Grammar:
//   formula := ident "~" expr
//   expr    := term ("+" term)*
//   term    := factor ((":"|"*") factor)*
//   factor  := ident | "(" expr ")"
// "a*b" expands to a + b + a:b (all main effects plus every interaction of
// the operands); "a:b" is the bare interaction. Identifiers match
// [A-Za-z_][A-Za-z0-9_.]*; whitespace is insignificant. Syntax errors carry
// the byte offset.
ModelFormula parse_formula(std::string_view text);

// Deterministic rendering; parse_formula(canonical_string(f)) == f.
std::string canonical_string(const ModelFormula& f);

// One multiplicative factor of a design column: either a continuous
// variable or a (variable == level) indicator.
struct ColumnPart {
  std::string variable;
  std::string level;  // meaningful when is_dummy
  bool is_dummy = false;

  friend bool operator==(const ColumnPart&, const ColumnPart&) = default;
};

struct ColumnInfo {
  std::string name;                // "(intercept)", "x", "arch=vit", "x:arch=vit"
  Term term;                       // generating term; empty for the intercept
  std::vector<ColumnPart> parts;   // empty for the intercept
};

// Numeric design: first column all ones, then the encoded terms in
// canonical order. Carries the fit-time categorical levels so new data can
// be encoded compatibly (and unseen levels rejected).
struct DesignMatrix {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::string response;
  std::vector<ColumnInfo> columns;
  std::vector<Term> terms;
  std::map<Term, std::pair<int, int>> term_spans;  // term -> [begin,end) columns
  std::map<std::string, std::vector<std::string>> factor_levels;  // reference first

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index n_columns() const { return X.cols(); }
};

// Compile formula + data into the numeric design. Categorical main effects
// are dummy-coded against the reference level (lexicographic minimum unless
// overridden); interactions are elementwise products of the encoded parent
// columns. Fails on unknown variables, single-level factors, and n <= K.
DesignMatrix build_design_matrix(
    const ModelFormula& f, const Dataset& ds,
    const std::map<std::string, std::string>& reference_overrides = {});

// Encode new observations into the column layout of a fitted design.
// Rejects categorical levels that were absent at fit time.
Eigen::MatrixXd encode_rows(const DesignMatrix& trained, const Dataset& ds);

}  // namespace causaleval

#endif  // CAUSALEVAL_FORMULA_HPP
