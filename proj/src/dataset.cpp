#include "causaleval/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "causaleval/error.hpp"

namespace causaleval {

namespace {

bool parse_finite_double(const std::string& cell, double* out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;  // from_chars rejects leading '+'
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Character-level RFC-4180 reader: quoted fields may contain commas,
// escaped quotes ("") and line breaks.
RawTable read_csv(std::istream& in) {
  RawTable table;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool any_char = false;
  std::size_t offset = 0;

  auto end_field = [&]() {
    record.push_back(field);
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&]() {
    end_field();
    if (table.header.empty()) {
      table.header = record;
    } else {
      table.rows.push_back(record);
    }
    record.clear();
  };

  char c;
  while (in.get(c)) {
    any_char = true;
    ++offset;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          ++offset;
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw ParseError("unexpected quote inside unquoted field", offset - 1);
        }
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;  // handled with the following '\n'
      case '\n':
        end_record();
        break;
      default:
        field += c;
        break;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", offset);
  if (!field.empty() || !record.empty() || (any_char && table.header.empty())) {
    end_record();  // final record without trailing newline
  }
  if (!any_char) throw ParseError("empty file");
  if (table.header.empty()) throw ParseError("empty file");
  return table;
}

}  // namespace

Dataset::Dataset(std::vector<Column> cols) : cols_(std::move(cols)) {
  if (cols_.empty()) throw ValueError("dataset needs at least one column");
  n_ = cols_[0].size();
  if (n_ < 1) throw ValueError("dataset needs at least one observation");
  for (std::size_t i = 0; i < cols_.size(); ++i) {
    const Column& c = cols_[i];
    if (c.size() != n_) {
      throw ValueError("column '" + c.name + "' has length " +
                       std::to_string(c.size()) + ", expected " + std::to_string(n_));
    }
    if (c.kind == ColumnKind::continuous) {
      for (double v : c.reals) {
        if (!std::isfinite(v)) {
          throw ValueError("column '" + c.name + "' contains a non-finite value");
        }
      }
    } else {
      for (const std::string& s : c.labels) {
        if (s.empty()) throw ValueError("column '" + c.name + "' contains an empty level");
      }
    }
    if (!index_.emplace(c.name, i).second) {
      throw ValueError("duplicate column name '" + c.name + "'");
    }
  }
}

const Column& Dataset::col(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw ValueError("no column named '" + name + "'");
  return cols_[it->second];
}

Dataset load_csv(std::istream& in, const std::map<std::string, ColumnKind>& schema) {
  RawTable raw = read_csv(in);

  std::set<std::string> seen;
  for (const std::string& h : raw.header) {
    if (h.empty()) throw ParseError("empty header name");
    if (!seen.insert(h).second) throw ParseError("duplicate header name '" + h + "'");
  }
  for (const auto& [name, kind] : schema) {
    (void)kind;
    if (!seen.count(name)) throw ParseError("schema names missing column '" + name + "'");
  }
  if (raw.rows.empty()) throw ParseError("empty dataset");

  const std::size_t width = raw.header.size();
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    if (raw.rows[r].size() != width) {
      throw ParseError("row " + std::to_string(r + 2) + " has " +
                       std::to_string(raw.rows[r].size()) + " fields, expected " +
                       std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      if (raw.rows[r][c].empty()) {
        throw ParseError("missing value in column '" + raw.header[c] + "', row " +
                         std::to_string(r + 2));
      }
    }
  }

  std::vector<Column> cols(width);
  for (std::size_t c = 0; c < width; ++c) {
    Column& col = cols[c];
    col.name = raw.header[c];

    std::vector<double> parsed(raw.rows.size());
    bool all_numeric = true;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
      if (!parse_finite_double(raw.rows[r][c], &parsed[r])) {
        all_numeric = false;
        break;
      }
    }

    auto it = schema.find(col.name);
    const ColumnKind kind =
        (it != schema.end()) ? it->second
                             : (all_numeric ? ColumnKind::continuous : ColumnKind::categorical);
    col.kind = kind;
    if (kind == ColumnKind::continuous) {
      if (!all_numeric) {
        throw ParseError("column '" + col.name +
                         "' is declared continuous but contains a non-numeric cell");
      }
      col.reals = std::move(parsed);
    } else {
      col.labels.reserve(raw.rows.size());
      for (const auto& row : raw.rows) col.labels.push_back(row[c]);
    }
  }
  return Dataset(std::move(cols));
}

Dataset load_csv_file(const std::string& path, const std::map<std::string, ColumnKind>& schema) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValueError("cannot open '" + path + "'");
  return load_csv(f, schema);
}

std::map<std::string, ColumnKind> load_schema_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValueError("cannot open '" + path + "'");
  std::map<std::string, ColumnKind> schema;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("schema line " + std::to_string(lineno) + ": expected name=kind");
    }
    const std::string name = line.substr(0, eq);
    const std::string kind = line.substr(eq + 1);
    if (kind == "continuous") {
      schema[name] = ColumnKind::continuous;
    } else if (kind == "categorical") {
      schema[name] = ColumnKind::categorical;
    } else {
      throw ParseError("schema line " + std::to_string(lineno) + ": unknown kind '" +
                       kind + "'");
    }
  }
  return schema;
}

Dataset center(const Dataset& ds, const std::vector<std::string>& names) {
  Dataset out = ds;
  for (const std::string& name : names) {
    auto it = out.index_.find(name);
    if (it == out.index_.end()) throw ValueError("no column named '" + name + "'");
    Column& c = out.cols_[it->second];
    if (c.kind != ColumnKind::continuous) {
      throw ValueError("cannot center categorical column '" + name + "'");
    }
    double mean = 0.0;
    for (double v : c.reals) mean += v;
    mean /= static_cast<double>(c.reals.size());
    for (double& v : c.reals) v -= mean;
    out.centered_[name] += mean;
  }
  return out;
}

std::vector<std::string> levels(const Column& col) {
  if (col.kind != ColumnKind::categorical) {
    throw ValueError("levels requires a categorical column");
  }
  std::set<std::string> distinct(col.labels.begin(), col.labels.end());
  return std::vector<std::string>(distinct.begin(), distinct.end());
}

}  // namespace causaleval
