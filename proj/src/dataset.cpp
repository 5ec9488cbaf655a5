#include "statbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <set>
#include <unordered_set>

#include "statbench/errors.hpp"
#include "statbench/numfmt.hpp"

namespace statbench {

std::string_view to_string(ColumnType type) {
  return type == ColumnType::Numeric ? "numeric" : "categorical";
}

CellValue::CellValue(double number) {
  if (std::isfinite(number)) value_ = number;
}

bool operator==(const CellValue& a, const CellValue& b) {
  if (a.value_.index() != b.value_.index()) return false;
  if (a.is_number()) {
    double x = a.number(), y = b.number();
    return std::memcmp(&x, &y, sizeof(double)) == 0;
  }
  return a.value_ == b.value_;
}

Column::Column(std::string name, ColumnType type, std::vector<CellValue> cells)
    : name_(std::move(name)), type_(type), cells_(std::move(cells)) {
  if (name_.empty()) throw DomainError("column name must not be empty");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& c = cells_[i];
    if (c.is_missing()) continue;
    if ((type_ == ColumnType::Numeric) != c.is_number()) {
      throw TypeError("column '" + name_ + "' row " + std::to_string(i + 1) +
                      ": cell does not match column type " + std::string(to_string(type_)));
    }
  }
}

std::vector<double> Column::numbers() const {
  if (type_ != ColumnType::Numeric) {
    throw TypeError("variable '" + name_ + "' must be numeric");
  }
  std::vector<double> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_) {
    if (c.is_number()) out.push_back(c.number());
  }
  return out;
}

Dataset::Dataset(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::unordered_set<std::string> seen;
  for (const auto& c : columns_) {
    if (!seen.insert(c.name()).second) {
      throw ConflictError("duplicate column name '" + c.name() + "'");
    }
  }
  if (!columns_.empty()) {
    n_rows_ = columns_.front().size();
    for (const auto& c : columns_) {
      if (c.size() != n_rows_) {
        throw DomainError("column '" + c.name() + "' has " + std::to_string(c.size()) +
                          " cells, expected " + std::to_string(n_rows_));
      }
    }
  }
}

const Column* Dataset::find(std::string_view name) const {
  for (const auto& c : columns_) {
    if (c.name() == name) return &c;
  }
  return nullptr;
}

const Column& Dataset::column(std::string_view name) const {
  if (const auto* c = find(name)) return *c;
  throw NotFoundError("unknown variable '" + std::string(name) + "'");
}

Dataset Dataset::with_column(Column column) const {
  if (!columns_.empty() && column.size() != n_rows_) {
    throw DomainError("new column '" + column.name() + "' has the wrong length");
  }
  std::vector<Column> cols = columns_;
  cols.push_back(std::move(column));
  return Dataset(std::move(cols));
}

std::string_view to_string(TransformOp op) {
  switch (op) {
    case TransformOp::Log: return "log";
    case TransformOp::Sqrt: return "sqrt";
    case TransformOp::Square: return "square";
    case TransformOp::Standardize: return "standardize";
    case TransformOp::BinEqualWidth: return "bin";
  }
  return "?";
}

std::optional<TransformOp> transform_op_from_string(std::string_view name) {
  for (auto op : {TransformOp::Log, TransformOp::Sqrt, TransformOp::Square,
                  TransformOp::Standardize, TransformOp::BinEqualWidth}) {
    if (to_string(op) == name) return op;
  }
  return std::nullopt;
}

namespace {

bool is_missing_token(std::string_view s) { return s.empty() || s == "NA"; }

// Numeric-looking but non-finite tokens (e.g. 1e999) count as missing.
enum class TokenKind { Missing, Number, Label };

TokenKind classify(std::string_view s) {
  if (is_missing_token(s)) return TokenKind::Missing;
  auto v = parse_number(s);
  if (!v) return TokenKind::Label;
  return std::isfinite(*v) ? TokenKind::Number : TokenKind::Missing;
}

void validate_utf8(std::string_view text) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.size();) {
    auto c = static_cast<unsigned char>(text[i]);
    if (c == '\n') ++line;
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > text.size()) throw ParseError("input is not valid UTF-8", line);
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) {
        throw ParseError("input is not valid UTF-8", line);
      }
    }
    i += len;
  }
}

struct Record {
  std::vector<std::string> fields;
  std::size_t line;
};

std::vector<Record> split_records(std::string_view text) {
  std::vector<Record> records;
  std::size_t i = 0, line = 1;
  const std::size_t n = text.size();
  while (i < n) {
    Record rec{{}, line};
    std::string field;
    bool end_of_record = false;
    while (!end_of_record) {
      field.clear();
      if (i < n && text[i] == '"') {
        ++i;
        for (;;) {
          if (i >= n) throw ParseError("unterminated quoted field", rec.line);
          char c = text[i++];
          if (c == '"') {
            if (i < n && text[i] == '"') {
              field.push_back('"');
              ++i;
            } else {
              break;
            }
          } else {
            if (c == '\n') ++line;
            field.push_back(c);
          }
        }
        if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          throw ParseError("unexpected character after quoted field", line);
        }
      } else {
        while (i < n && text[i] != ',' && text[i] != '\n') {
          if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') break;
          field.push_back(text[i++]);
        }
      }
      rec.fields.push_back(field);
      if (i < n && text[i] == ',') {
        ++i;
      } else {
        if (i < n && text[i] == '\r') ++i;
        if (i < n && text[i] == '\n') {
          ++i;
          ++line;
        }
        end_of_record = true;
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace

ColumnType infer_column_type(std::span<const std::string> raw) {
  bool any_number = false;
  for (const auto& s : raw) {
    switch (classify(s)) {
      case TokenKind::Label: return ColumnType::Categorical;
      case TokenKind::Number: any_number = true; break;
      case TokenKind::Missing: break;
    }
  }
  return any_number ? ColumnType::Numeric : ColumnType::Categorical;
}

Dataset parse_csv(std::string_view text, bool has_header) {
  if (text.size() >= 3 && std::memcmp(text.data(), "\xEF\xBB\xBF", 3) == 0) text.remove_prefix(3);
  if (text.empty()) throw ParseError("empty input", 1);
  validate_utf8(text);
  auto records = split_records(text);
  if (records.empty()) throw ParseError("empty input", 1);

  const std::size_t width = records.front().fields.size();
  for (const auto& r : records) {
    if (r.fields.size() != width) {
      throw ParseError("row at line " + std::to_string(r.line) + " has " +
                           std::to_string(r.fields.size()) + " fields, expected " +
                           std::to_string(width),
                       r.line);
    }
  }

  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (has_header) {
    names = records.front().fields;
    first_data = 1;
    std::set<std::string> seen;
    for (const auto& name : names) {
      if (name.empty()) throw ParseError("empty column name in header", 1);
      if (!seen.insert(name).second) {
        throw ParseError("duplicate column name '" + name + "' in header", 1);
      }
    }
  } else {
    for (std::size_t k = 0; k < width; ++k) names.push_back("c" + std::to_string(k + 1));
  }

  const std::size_t rows = records.size() - first_data;
  std::vector<Column> columns;
  columns.reserve(width);
  std::vector<std::string> raw(rows);
  for (std::size_t k = 0; k < width; ++k) {
    for (std::size_t r = 0; r < rows; ++r) raw[r] = std::move(records[first_data + r].fields[k]);
    ColumnType type = infer_column_type(raw);
    std::vector<CellValue> cells;
    cells.reserve(rows);
    for (auto& s : raw) {
      if (is_missing_token(s)) {
        cells.emplace_back();
      } else if (type == ColumnType::Numeric) {
        cells.emplace_back(*parse_number(s));
      } else {
        cells.emplace_back(std::move(s));
      }
    }
    columns.emplace_back(names[k], type, std::move(cells));
  }
  return Dataset(std::move(columns));
}

namespace {

void append_field(std::string& out, std::string_view field) {
  bool quote = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!quote) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

std::string serialize_csv(const Dataset& ds) {
  std::string out;
  for (std::size_t k = 0; k < ds.n_columns(); ++k) {
    if (k) out.push_back(',');
    append_field(out, ds.columns()[k].name());
  }
  out.push_back('\n');
  for (std::size_t r = 0; r < ds.n_rows(); ++r) {
    for (std::size_t k = 0; k < ds.n_columns(); ++k) {
      if (k) out.push_back(',');
      const auto& cell = ds.columns()[k].cells()[r];
      if (cell.is_missing()) {
        out.append("NA");
      } else if (cell.is_number()) {
        out.append(format_number(cell.number()));
      } else {
        append_field(out, cell.label());
      }
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

std::vector<std::string> names_of_type(const Dataset& ds, ColumnType type) {
  std::vector<std::string> out;
  for (const auto& c : ds.columns()) {
    if (c.type() == type) out.push_back(c.name());
  }
  return out;
}

}  // namespace

std::vector<std::string> numeric_names(const Dataset& ds) {
  return names_of_type(ds, ColumnType::Numeric);
}

std::vector<std::string> categorical_names(const Dataset& ds) {
  return names_of_type(ds, ColumnType::Categorical);
}

bool check_variable(const Dataset& ds, std::string_view name) { return ds.find(name) != nullptr; }

std::vector<double> equal_width_breaks(double lo, double hi, int bins) {
  std::vector<double> breaks(static_cast<std::size_t>(bins) + 1);
  const double width = (hi - lo) / bins;
  for (int i = 0; i < bins; ++i) breaks[i] = lo + i * width;
  breaks[bins] = hi;
  return breaks;
}

std::size_t bin_index(std::span<const double> breaks, double value) {
  const std::size_t bins = breaks.size() - 1;
  auto it = std::upper_bound(breaks.begin(), breaks.end(), value);
  std::size_t idx = it == breaks.begin() ? 0 : static_cast<std::size_t>(it - breaks.begin()) - 1;
  return std::min(idx, bins - 1);
}

namespace {

std::string row_text(std::size_t row) { return "row " + std::to_string(row + 1); }

}  // namespace

Dataset apply_transform(const Dataset& ds, const TransformSpec& spec) {
  if (spec.target.empty()) throw DomainError("transform target name must not be empty");
  if (ds.find(spec.target)) {
    throw ConflictError("variable '" + spec.target + "' already exists");
  }
  const Column& src = ds.column(spec.source);
  if (src.type() != ColumnType::Numeric) {
    throw TypeError("variable '" + spec.source + "' must be numeric for " +
                    std::string(to_string(spec.op)));
  }
  const auto& cells = src.cells();
  std::vector<CellValue> out(cells.size());

  auto for_each_number = [&](auto&& fn) {
    for (std::size_t r = 0; r < cells.size(); ++r) {
      if (cells[r].is_number()) fn(r, cells[r].number());
    }
  };

  switch (spec.op) {
    case TransformOp::Log:
      for_each_number([&](std::size_t r, double v) {
        if (!(v > 0)) {
          throw DomainError("log requires positive values; " + row_text(r) + " of '" +
                            spec.source + "' is " + format_number(v));
        }
        out[r] = std::log(v);
      });
      break;
    case TransformOp::Sqrt:
      for_each_number([&](std::size_t r, double v) {
        if (v < 0) {
          throw DomainError("sqrt requires non-negative values; " + row_text(r) + " of '" +
                            spec.source + "' is " + format_number(v));
        }
        out[r] = std::sqrt(v);
      });
      break;
    case TransformOp::Square:
      for_each_number([&](std::size_t r, double v) { out[r] = v * v; });
      break;
    case TransformOp::Standardize: {
      auto xs = src.numbers();
      if (xs.size() < 2) throw DomainError("standardize needs at least 2 non-missing values");
      double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
      double ss = 0;
      for (double v : xs) ss += (v - mean) * (v - mean);
      double sd = std::sqrt(ss / (xs.size() - 1));
      if (!(sd > 0)) throw DomainError("standardize requires a positive standard deviation");
      for_each_number([&](std::size_t r, double v) { out[r] = (v - mean) / sd; });
      break;
    }
    case TransformOp::BinEqualWidth: {
      if (spec.bins < 1) throw DomainError("bins must be a positive integer");
      auto xs = src.numbers();
      if (xs.empty()) throw DomainError("binning needs at least one non-missing value");
      auto [lo_it, hi_it] = std::minmax_element(xs.begin(), xs.end());
      if (!(*lo_it < *hi_it)) throw DomainError("binning requires min < max");
      auto breaks = equal_width_breaks(*lo_it, *hi_it, spec.bins);
      std::vector<std::string> labels;
      for (int b = 0; b < spec.bins; ++b) {
        bool last = b == spec.bins - 1;
        labels.push_back("[" + format_number(breaks[b]) + "," + format_number(breaks[b + 1]) +
                         (last ? "]" : ")"));
      }
      std::vector<CellValue> binned(cells.size());
      for_each_number([&](std::size_t r, double v) { binned[r] = labels[bin_index(breaks, v)]; });
      return ds.with_column(Column(spec.target, ColumnType::Categorical, std::move(binned)));
    }
  }
  return ds.with_column(Column(spec.target, ColumnType::Numeric, std::move(out)));
}

}  // namespace statbench
