// Copyright 2026 The cvbell Authors
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

// Self-describing tabular output: metadata, column headers and numeric rows,
// rendered as CSV or JSON.
//
// CSV layout: one "# key: value" line per metadata entry, a header row, then
// comma-separated rows. Numbers are printed with 17 significant digits in the
// C locale, so parsing the text reproduces every double bit for bit.
// JSON layout: {"meta": {...}, "columns": [...], "rows": [[...], ...]}.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cvbell {

enum class ReportFormat { Csv, Json };

/// Parses "csv" or "json". Throws DomainError otherwise.
ReportFormat parse_report_format(std::string_view name);

using MetaValue = std::variant<double, std::string>;

struct ReportRecord {
  std::vector<std::pair<std::string, MetaValue>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Replaces an existing key in place, otherwise appends.
  void set_meta(const std::string& key, MetaValue value);
  const MetaValue* find_meta(std::string_view key) const;
  /// Throws DomainError if the width does not match the header.
  void add_row(std::vector<double> row);
  /// Index of a column by name. Throws DomainError if absent.
  std::size_t column(std::string_view name) const;
};

/// 17 significant digits, shortest %g-style form, locale independent.
std::string format_number(double value);

std::string render(const ReportRecord& record, ReportFormat format);
std::string render_csv(const ReportRecord& record);
std::string render_json(const ReportRecord& record);

/// Inverse of render_csv. Metadata values that parse completely as numbers
/// come back as numbers.
ReportRecord parse_csv(std::string_view text);

}  // namespace cvbell
