#pragma once

// Dense trace-by-feature matrix with binary labels.

#include <cmath>
#include <string>
#include <vector>

#include "devmine/common.hpp"

namespace devmine {

/// Continuous columns take threshold conditions (<=, >); indicator columns
/// hold only 0/1 and take equality conditions.
enum class ColumnKind { Continuous, Indicator };

struct Column {
  std::string name;
  ColumnKind kind = ColumnKind::Continuous;
  std::string family;  // IA, Seq, Decl, DeclD or Data

  friend bool operator==(const Column&, const Column&) = default;
};

struct FeatureMatrix {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;

  std::size_t row_count() const { return rows.size(); }
  std::size_t col_count() const { return columns.size(); }

  void validate() const {
    if (rows.size() != labels.size()) throw Error("feature matrix: row/label count mismatch");
    for (const auto& r : rows) {
      if (r.size() != columns.size()) throw Error("feature matrix: ragged row");
      for (double v : r) {
        if (!std::isfinite(v)) throw Error("feature matrix: non-finite value");
      }
    }
  }

  std::size_t count(int label) const {
    std::size_t c = 0;
    for (int y : labels) c += y == label;
    return c;
  }

  FeatureMatrix subset(const std::vector<std::size_t>& idx) const {
    FeatureMatrix out;
    out.columns = columns;
    out.rows.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (auto i : idx) {
      out.rows.push_back(rows.at(i));
      out.labels.push_back(labels.at(i));
    }
    return out;
  }

  std::vector<double> column(std::size_t j) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[j]);
    return out;
  }

  /// Side-by-side concatenation; both matrices describe the same rows.
  void append_columns(const FeatureMatrix& other) {
    if (columns.empty() && rows.empty()) {
      *this = other;
      return;
    }
    if (other.rows.size() != rows.size()) throw Error("feature matrix: cannot join different row counts");
    columns.insert(columns.end(), other.columns.begin(), other.columns.end());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].insert(rows[i].end(), other.rows[i].begin(), other.rows[i].end());
    }
  }

  /// First line: `#family` metadata per column; second: header with canonical
  /// feature names; then one row per trace, label last.
  std::string to_csv() const {
    std::string out = "#family";
    for (const auto& c : columns) out += "," + csv_field(c.family + (c.kind == ColumnKind::Indicator ? ":indicator" : ""));
    out += ",\ntrace";
    for (const auto& c : columns) out += "," + csv_field(c.name);
    out += ",label\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out += std::to_string(i);
      for (double v : rows[i]) out += "," + format_number(v);
      out += "," + std::to_string(labels[i]) + "\n";
    }
    return out;
  }
};

}  // namespace devmine
