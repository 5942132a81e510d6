#include "causaleval/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "causaleval/error.hpp"

namespace causaleval {

std::string Term::label() const {
  std::string out;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (i) out += ':';
    out += variables[i];
  }
  return out;
}

namespace {

enum class TokKind { ident, tilde, plus, colon, star, lparen, rparen, end };

struct Token {
  TokKind kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) return {TokKind::end, "", at};
    const char c = text_[pos_];
    switch (c) {
      case '~': ++pos_; return {TokKind::tilde, "~", at};
      case '+': ++pos_; return {TokKind::plus, "+", at};
      case ':': ++pos_; return {TokKind::colon, ":", at};
      case '*': ++pos_; return {TokKind::star, "*", at};
      case '(': ++pos_; return {TokKind::lparen, "(", at};
      case ')': ++pos_; return {TokKind::rparen, ")", at};
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_ + 1;
      while (end < text_.size()) {
        const char d = text_[end];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '.') {
          ++end;
        } else {
          break;
        }
      }
      Token t{TokKind::ident, std::string(text_.substr(pos_, end - pos_)), at};
      pos_ = end;
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// A parsed subexpression is a set of terms, each a set of variable names.
using TermSet = std::vector<std::set<std::string>>;

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { advance(); }

  ModelFormula parse() {
    const Token resp = expect(TokKind::ident, "response name");
    expect(TokKind::tilde, "'~'");
    if (cur_.kind == TokKind::end) {
      throw ParseError("empty right-hand side", cur_.offset);
    }
    TermSet rhs = parse_expr();
    expect(TokKind::end, "end of formula");

    ModelFormula f;
    f.response = resp.text;
    std::set<std::vector<std::string>> dedup;
    for (const auto& vars : rhs) {
      if (vars.count(f.response)) {
        throw ParseError("response '" + f.response + "' appears on the right-hand side");
      }
      dedup.insert(std::vector<std::string>(vars.begin(), vars.end()));
    }
    for (const auto& vars : dedup) f.terms.push_back(Term{vars});
    std::sort(f.terms.begin(), f.terms.end());
    return f;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  Token expect(TokKind kind, const std::string& what) {
    if (cur_.kind != kind) {
      throw ParseError("expected " + what, cur_.offset);
    }
    Token t = cur_;
    advance();
    return t;
  }

  TermSet parse_expr() {
    TermSet out = parse_term();
    while (cur_.kind == TokKind::plus) {
      advance();
      TermSet next = parse_term();
      out.insert(out.end(), next.begin(), next.end());
    }
    return out;
  }

  TermSet parse_term() {
    TermSet acc = parse_factor();
    while (cur_.kind == TokKind::colon || cur_.kind == TokKind::star) {
      const bool star = cur_.kind == TokKind::star;
      advance();
      TermSet rhs = parse_factor();
      TermSet crossed;
      for (const auto& a : acc) {
        for (const auto& b : rhs) {
          std::set<std::string> u = a;
          u.insert(b.begin(), b.end());
          crossed.push_back(std::move(u));
        }
      }
      if (star) {
        // a*b = a + b + a:b
        TermSet merged = acc;
        merged.insert(merged.end(), rhs.begin(), rhs.end());
        merged.insert(merged.end(), crossed.begin(), crossed.end());
        acc = std::move(merged);
      } else {
        acc = std::move(crossed);
      }
    }
    return acc;
  }

  TermSet parse_factor() {
    if (cur_.kind == TokKind::ident) {
      TermSet out{{cur_.text}};
      advance();
      return out;
    }
    if (cur_.kind == TokKind::lparen) {
      advance();
      TermSet out = parse_expr();
      expect(TokKind::rparen, "')'");
      return out;
    }
    throw ParseError("expected variable name or '('", cur_.offset);
  }

  Lexer lexer_;
  Token cur_{TokKind::end, "", 0};
};

}  // namespace

ModelFormula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string canonical_string(const ModelFormula& f) {
  std::string out = f.response + " ~ ";
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    if (i) out += " + ";
    out += f.terms[i].label();
  }
  return out;
}

namespace {

// Encoded representation of one variable: an ordered list of column parts,
// one per design column the variable contributes.
std::vector<ColumnPart> encode_variable(
    const std::string& var, const Dataset& ds,
    const std::map<std::string, std::string>& reference_overrides,
    std::map<std::string, std::vector<std::string>>* factor_levels) {
  if (!ds.has(var)) throw ValueError("unknown variable '" + var + "'");
  const Column& c = ds.col(var);
  if (c.kind == ColumnKind::continuous) {
    return {ColumnPart{var, "", false}};
  }
  std::vector<std::string> lv = levels(c);
  auto ov = reference_overrides.find(var);
  if (ov != reference_overrides.end()) {
    auto it = std::find(lv.begin(), lv.end(), ov->second);
    if (it == lv.end()) {
      throw ValueError("reference level '" + ov->second + "' not found in '" + var + "'");
    }
    std::rotate(lv.begin(), it, it + 1);  // chosen reference to the front
  }
  if (lv.size() < 2) {
    throw ValueError("categorical variable '" + var +
                     "' has a single level and is uninformative");
  }
  factor_levels->emplace(var, lv);
  std::vector<ColumnPart> parts;
  for (std::size_t i = 1; i < lv.size(); ++i) {
    parts.push_back(ColumnPart{var, lv[i], true});
  }
  return parts;
}

double part_value(const ColumnPart& p, const Dataset& ds, std::size_t row) {
  const Column& c = ds.col(p.variable);
  if (p.is_dummy) return c.labels[row] == p.level ? 1.0 : 0.0;
  return c.reals[row];
}

std::string column_name(const std::vector<ColumnPart>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ':';
    out += parts[i].variable;
    if (parts[i].is_dummy) out += "=" + parts[i].level;
  }
  return out;
}

}  // namespace

DesignMatrix build_design_matrix(
    const ModelFormula& f, const Dataset& ds,
    const std::map<std::string, std::string>& reference_overrides) {
  if (!ds.has(f.response)) throw ValueError("unknown variable '" + f.response + "'");
  const Column& resp = ds.col(f.response);
  if (resp.kind != ColumnKind::continuous) {
    throw ValueError("response '" + f.response + "' must be numeric");
  }

  DesignMatrix dm;
  dm.response = f.response;
  dm.terms = f.terms;
  const std::size_t n = ds.n_rows();
  dm.y = Eigen::Map<const Eigen::VectorXd>(resp.reals.data(), static_cast<Eigen::Index>(n));

  dm.columns.push_back(ColumnInfo{"(intercept)", Term{}, {}});

  std::map<std::string, std::vector<ColumnPart>> encoded;
  for (const Term& t : f.terms) {
    const int begin = static_cast<int>(dm.columns.size());
    // Cross product of the parents' encoded columns, leftmost variable major.
    std::vector<std::vector<ColumnPart>> combos{{}};
    for (const std::string& var : t.variables) {
      auto it = encoded.find(var);
      if (it == encoded.end()) {
        it = encoded.emplace(var, encode_variable(var, ds, reference_overrides,
                                                  &dm.factor_levels)).first;
      }
      std::vector<std::vector<ColumnPart>> next;
      for (const auto& combo : combos) {
        for (const ColumnPart& p : it->second) {
          auto ext = combo;
          ext.push_back(p);
          next.push_back(std::move(ext));
        }
      }
      combos = std::move(next);
    }
    for (auto& parts : combos) {
      dm.columns.push_back(ColumnInfo{column_name(parts), t, std::move(parts)});
    }
    dm.term_spans[t] = {begin, static_cast<int>(dm.columns.size())};
  }

  const Eigen::Index k = static_cast<Eigen::Index>(dm.columns.size());
  if (static_cast<Eigen::Index>(n) <= k) {
    throw ModelError("need more observations than design columns (n=" +
                     std::to_string(n) + ", columns=" + std::to_string(k) + ")");
  }

  dm.X.resize(static_cast<Eigen::Index>(n), k);
  dm.X.col(0).setOnes();
  for (Eigen::Index j = 1; j < k; ++j) {
    const auto& parts = dm.columns[static_cast<std::size_t>(j)].parts;
    for (std::size_t i = 0; i < n; ++i) {
      double v = 1.0;
      for (const ColumnPart& p : parts) v *= part_value(p, ds, i);
      dm.X(static_cast<Eigen::Index>(i), j) = v;
    }
  }
  return dm;
}

Eigen::MatrixXd encode_rows(const DesignMatrix& trained, const Dataset& ds) {
  // Every variable must be present with the fit-time kind, and categorical
  // values must come from the fit-time level set.
  std::set<std::string> vars;
  for (const ColumnInfo& ci : trained.columns) {
    for (const ColumnPart& p : ci.parts) vars.insert(p.variable);
  }
  for (const std::string& var : vars) {
    if (!ds.has(var)) throw ValueError("missing column '" + var + "'");
    const Column& c = ds.col(var);
    auto lv = trained.factor_levels.find(var);
    const bool trained_categorical = lv != trained.factor_levels.end();
    if (trained_categorical != (c.kind == ColumnKind::categorical)) {
      throw ValueError("column '" + var + "' does not match the fitted design");
    }
    if (trained_categorical) {
      for (const std::string& label : c.labels) {
        if (std::find(lv->second.begin(), lv->second.end(), label) == lv->second.end()) {
          throw ValueError("unseen level '" + label + "' for variable '" + var + "'");
        }
      }
    }
  }

  const std::size_t n = ds.n_rows();
  Eigen::MatrixXd X(static_cast<Eigen::Index>(n),
                    static_cast<Eigen::Index>(trained.columns.size()));
  X.col(0).setOnes();
  for (std::size_t j = 1; j < trained.columns.size(); ++j) {
    const auto& parts = trained.columns[j].parts;
    for (std::size_t i = 0; i < n; ++i) {
      double v = 1.0;
      for (const ColumnPart& p : parts) v *= part_value(p, ds, i);
      X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return X;
}

}  // namespace causaleval
