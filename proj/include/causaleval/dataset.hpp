#ifndef CAUSALEVAL_DATASET_HPP
#define CAUSALEVAL_DATASET_HPP

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace causaleval {

enum class ColumnKind { continuous, categorical };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  std::vector<double> reals;         // payload when continuous
  std::vector<std::string> labels;   // payload when categorical

  std::size_t size() const {
    return kind == ColumnKind::continuous ? reals.size() : labels.size();
  }
};

// Immutable column-oriented table. All columns share the same length n >= 1,
// continuous values are finite, column names are unique.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<Column> cols);

  std::size_t n_rows() const { return n_; }
  std::size_t n_cols() const { return cols_.size(); }
  bool has(const std::string& name) const { return index_.count(name) > 0; }
  const Column& col(const std::string& name) const;
  const std::vector<Column>& columns() const { return cols_; }

  // Which columns were centered and the means subtracted from them,
  // accumulated across center() calls.
  const std::map<std::string, double>& centered_means() const { return centered_; }

 private:
  std::vector<Column> cols_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, double> centered_;
  std::size_t n_ = 0;

  friend Dataset center(const Dataset&, const std::vector<std::string>&);
};

// Parse RFC-4180-style CSV (header row mandatory, "." decimal separator,
// quoted fields with "" escapes). Without a schema entry, a column is
// continuous iff every cell parses as a finite decimal number. Missing
// (empty) cells are rejected.
Dataset load_csv(std::istream& in,
                 const std::map<std::string, ColumnKind>& schema = {});
Dataset load_csv_file(const std::string& path,
                      const std::map<std::string, ColumnKind>& schema = {});

// Schema file format: one `name=continuous|categorical` per line; blank
// lines and lines starting with '#' are ignored.
std::map<std::string, ColumnKind> load_schema_file(const std::string& path);

// Subtract the sample mean from each named continuous column. The result
// records the subtracted means; other columns are untouched.
Dataset center(const Dataset& ds, const std::vector<std::string>& names);

// Distinct levels in lexicographic order; position 0 is the reference level.
std::vector<std::string> levels(const Column& col);

}  // namespace causaleval

#endif  // CAUSALEVAL_DATASET_HPP
