#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace statbench {

enum class ColumnType { Numeric, Categorical };

std::string_view to_string(ColumnType type);

struct Missing {
  bool operator==(const Missing&) const = default;
};

/// One cell: a finite number, a categorical label, or missing.
class CellValue {
 public:
  CellValue() = default;
  CellValue(Missing) {}
  /// Non-finite numbers are stored as missing.
  CellValue(double number);
  CellValue(std::string label) : value_(std::move(label)) {}
  CellValue(const char* label) : value_(std::string(label)) {}

  bool is_missing() const { return std::holds_alternative<Missing>(value_); }
  bool is_number() const { return std::holds_alternative<double>(value_); }
  bool is_label() const { return std::holds_alternative<std::string>(value_); }

  double number() const { return std::get<double>(value_); }
  const std::string& label() const { return std::get<std::string>(value_); }

  /// Numbers compare bitwise.
  friend bool operator==(const CellValue& a, const CellValue& b);

 private:
  std::variant<Missing, double, std::string> value_;
};

class Column {
 public:
  Column(std::string name, ColumnType type, std::vector<CellValue> cells);

  const std::string& name() const { return name_; }
  ColumnType type() const { return type_; }
  const std::vector<CellValue>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  /// Non-missing numeric values in row order. Requires a Numeric column.
  std::vector<double> numbers() const;

  friend bool operator==(const Column&, const Column&) = default;

 private:
  std::string name_;
  ColumnType type_;
  std::vector<CellValue> cells_;
};

/// Immutable typed columnar table.
class Dataset {
 public:
  Dataset() = default;
  /// Throws ConflictError on duplicate names and DomainError on ragged columns.
  explicit Dataset(std::vector<Column> columns);

  const std::vector<Column>& columns() const { return columns_; }
  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_columns() const { return columns_.size(); }

  const Column* find(std::string_view name) const;
  /// Throws NotFoundError.
  const Column& column(std::string_view name) const;

  /// A copy with one more column.
  Dataset with_column(Column column) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<Column> columns_;
  std::size_t n_rows_ = 0;
};

using DatasetPtr = std::shared_ptr<const Dataset>;

enum class TransformOp { Log, Sqrt, Square, Standardize, BinEqualWidth };

std::string_view to_string(TransformOp op);
std::optional<TransformOp> transform_op_from_string(std::string_view name);

struct TransformSpec {
  std::string source;
  TransformOp op = TransformOp::Square;
  int bins = 4;
  std::string target;
};

ColumnType infer_column_type(std::span<const std::string> raw);

/// Throws ParseError (row index in line()) on malformed input.
Dataset parse_csv(std::string_view text, bool has_header = true);
std::string serialize_csv(const Dataset& ds);

std::vector<std::string> numeric_names(const Dataset& ds);
std::vector<std::string> categorical_names(const Dataset& ds);
bool check_variable(const Dataset& ds, std::string_view name);

Dataset apply_transform(const Dataset& ds, const TransformSpec& spec);

/// Equal-width break points over [lo, hi]; the last break is exactly hi.
std::vector<double> equal_width_breaks(double lo, double hi, int bins);
/// Bin of value under left-closed bins with the last bin closed on both ends.
std::size_t bin_index(std::span<const double> breaks, double value);

}  // namespace statbench
