// Copyright 2026 The maxent-sb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// CSV output shared by the figure and witness exports. Every file starts with
// a comment line "# config_hash=<16 hex digits> seed=<n>" followed by the
// header row. Numbers are written with 17 significant digits.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "maxent_sb/bounds.hpp"
#include "maxent_sb/errors.hpp"

namespace maxent_sb {

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using CsvCell = std::variant<double, long long, std::string, bool>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<CsvCell> row) {
    if (row.size() != columns_.size()) throw Error("csv row has " + std::to_string(row.size()) + " cells, expected " +
                                                   std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }

  void write(std::ostream& os, const std::string& config_hash, std::uint64_t seed) const {
    os << "# config_hash=" << config_hash << " seed=" << seed << '\n';
    for (std::size_t j = 0; j < columns_.size(); ++j) os << (j ? "," : "") << columns_[j];
    os << '\n';
    for (const auto& row : rows_) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) os << ',';
        std::visit(
            [&os](const auto& v) {
              using T = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<T, double>) os << format_double(v);
              else if constexpr (std::is_same_v<T, bool>) os << (v ? "true" : "false");
              else os << v;
            },
            row[j]);
      }
      os << '\n';
    }
  }

  void save(const std::string& path, const std::string& config_hash, std::uint64_t seed) const {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    write(os, config_hash, seed);
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<CsvCell>> rows_;
};

/// Columns t, delta, bound, initial_distance.
inline CsvTable witness_table(const WitnessSeries& w) {
  CsvTable table({"t", "delta", "bound", "initial_distance"});
  for (std::size_t k = 0; k < w.t.size(); ++k) table.add_row({w.t[k], w.delta[k], w.bound, w.initial_distance});
  return table;
}

/// Columns <key>, lhs, rhs, slack, satisfied; `key` names the instance column.
inline CsvTable report_table(const std::vector<BoundReport>& reports, const std::string& key = "instance") {
  CsvTable table({key, "lhs", "rhs", "slack", "satisfied"});
  for (const auto& r : reports) table.add_row({r.instance, r.lhs, r.rhs, r.slack, r.satisfied});
  return table;
}

}  // namespace maxent_sb
