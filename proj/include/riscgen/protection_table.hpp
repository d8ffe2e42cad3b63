#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "riscgen/error.hpp"

namespace riscgen {

enum class ColumnRole { BaseCoverage, Endorsement };

inline constexpr std::string_view kSectionA = "SectionA";
inline constexpr std::string_view kEndorsementPrefix = "QEF_";

inline const std::vector<std::string>& default_endorsement_ids() {
  static const std::vector<std::string> ids = {
      "2",  "3",  "4",  "5",  "8",  "9",  "13c", "16", "19", "20", "20a", "25", "27",
      "28", "30", "31", "33", "34", "37", "38", "40",  "41", "43", "44", "47",  "48a"};
  return ids;
}

inline std::string section_b_name(int k) { return "SectionB" + std::to_string(k); }
inline std::string endorsement_column(std::string_view id) {
  return std::string(kEndorsementPrefix) + std::string(id);
}

/// Endorsement ids order by numeric prefix, then by suffix ("20" < "20a" < "27").
inline bool endorsement_id_less(std::string_view a, std::string_view b) {
  auto split = [](std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    unsigned long number = 0;
    std::from_chars(s.data(), s.data() + i, number);
    return std::pair{number, s.substr(i)};
  };
  return split(a) < split(b);
}

/// Ordered, unique column names. Roles come from the naming convention:
/// `QEF_<id>` columns are endorsements, everything else is base coverage.
class ColumnSchema {
 public:
  ColumnSchema() = default;

  explicit ColumnSchema(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw Error(ErrorCode::EmptyTable, "schema has no columns");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
      if (n.empty()) throw Error(ErrorCode::ParseError, "empty column name");
      if (!seen.insert(n).second) throw Error(ErrorCode::InvalidConfig, "duplicate column name '" + n + "'");
    }
  }

  /// SectionA, SectionB1..B4 and the 26 default endorsements.
  static ColumnSchema contract_default() {
    std::vector<std::string> names{std::string(kSectionA)};
    for (int k = 1; k <= 4; ++k) names.push_back(section_b_name(k));
    for (const auto& id : default_endorsement_ids()) names.push_back(endorsement_column(id));
    return ColumnSchema(std::move(names));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  ColumnRole role(std::size_t i) const {
    return name(i).starts_with(kEndorsementPrefix) ? ColumnRole::Endorsement : ColumnRole::BaseCoverage;
  }

  /// Endorsement id of column i ("20a" for QEF_20a); empty for base coverages.
  std::string endorsement_id(std::size_t i) const {
    if (role(i) != ColumnRole::Endorsement) return {};
    return name(i).substr(kEndorsementPrefix.size());
  }

  /// Throws unless the schema has exactly one Section A and four Section B columns.
  void require_contract_layout() const {
    if (!index_of(kSectionA)) throw Error(ErrorCode::MissingColumn, "schema lacks SectionA");
    for (int k = 1; k <= 4; ++k) {
      if (!index_of(section_b_name(k))) throw Error(ErrorCode::MissingColumn, "schema lacks " + section_b_name(k));
    }
    const auto b_like = std::count_if(names_.begin(), names_.end(),
                                      [](const std::string& n) { return n.starts_with("SectionB"); });
    if (b_like != 4) throw Error(ErrorCode::InvalidConfig, "schema must have exactly four Section B columns");
  }

  friend bool operator==(const ColumnSchema&, const ColumnSchema&) = default;

 private:
  std::vector<std::string> names_;
};

using Row = std::vector<std::uint8_t>;

class ProtectionTable {
 public:
  ProtectionTable() = default;
  explicit ProtectionTable(ColumnSchema schema) : schema_(std::move(schema)) {}
  ProtectionTable(ColumnSchema schema, std::vector<Row> rows) : schema_(std::move(schema)) {
    rows_.reserve(rows.size());
    for (auto& r : rows) add_row(std::move(r));
  }

  void add_row(Row row) {
    if (row.size() != schema_.size()) {
      throw Error(ErrorCode::SchemaMismatch, "row has " + std::to_string(row.size()) + " cells, schema has " +
                                                 std::to_string(schema_.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] > 1) {
        throw Error(ErrorCode::NonBinaryCell, "row " + std::to_string(rows_.size()) + ", column '" +
                                                  schema_.name(c) + "': value " + std::to_string(row[c]));
      }
    }
    rows_.push_back(std::move(row));
  }

  const ColumnSchema& schema() const noexcept { return schema_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t column_count() const noexcept { return schema_.size(); }
  bool empty() const noexcept { return rows_.empty() || schema_.size() == 0; }

  /// Empirical P(column == 1).
  double marginal(std::size_t column) const {
    if (rows_.empty()) throw Error(ErrorCode::EmptyTable, "marginal of empty table");
    std::size_t ones = 0;
    for (const auto& r : rows_) ones += r[column];
    return static_cast<double>(ones) / static_cast<double>(rows_.size());
  }

  double mean_row_sum() const {
    if (rows_.empty()) throw Error(ErrorCode::EmptyTable, "mean row sum of empty table");
    std::size_t total = 0;
    for (const auto& r : rows_) for (auto v : r) total += v;
    return static_cast<double>(total) / static_cast<double>(rows_.size());
  }

  friend bool operator==(const ProtectionTable&, const ProtectionTable&) = default;

 private:
  ColumnSchema schema_;
  std::vector<Row> rows_;
};

// CSV: header line of column names, then one line of comma-separated 0/1
// cells per row. No quoting. LF line endings (a trailing CR is tolerated on read).

inline ProtectionTable read_table_csv(std::istream& in) {
  auto split = [](std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
      auto pos = line.find(',', start);
      out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return out;
  };
  auto chomp = [](std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyTable, "CSV has no header line");
  chomp(line);
  std::vector<std::string> names;
  for (auto f : split(line)) names.emplace_back(f);
  ProtectionTable table{ColumnSchema(std::move(names))};

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != table.column_count()) {
      throw Error(ErrorCode::SchemaMismatch, "line " + std::to_string(line_no) + ": expected " +
                                                 std::to_string(table.column_count()) + " cells, got " +
                                                 std::to_string(fields.size()));
    }
    Row row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (fields[c] == "0") row[c] = 0;
      else if (fields[c] == "1") row[c] = 1;
      else {
        throw Error(ErrorCode::NonBinaryCell, "line " + std::to_string(line_no) + ", column '" +
                                                  table.schema().name(c) + "': value '" + std::string(fields[c]) + "'");
      }
    }
    table.add_row(std::move(row));
  }
  return table;
}

inline ProtectionTable read_table_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_table_csv(in);
}

inline void write_table_csv(const ProtectionTable& table, std::ostream& out) {
  const auto& names = table.schema().names();
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  std::string line;
  for (const auto& row : table.rows()) {
    line.clear();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line.push_back(',');
      line.push_back(row[c] ? '1' : '0');
    }
    line.push_back('\n');
    out << line;
  }
}

inline void write_table_csv(const ProtectionTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  write_table_csv(table, out);
}

}  // namespace riscgen
