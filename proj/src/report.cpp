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

#include "cvbell/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "cvbell/errors.hpp"

namespace cvbell {

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw DomainError("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

void ReportRecord::set_meta(const std::string& key, MetaValue value) {
  for (auto& [k, v] : meta)
    if (k == key) {
      v = std::move(value);
      return;
    }
  meta.emplace_back(key, std::move(value));
}

const MetaValue* ReportRecord::find_meta(std::string_view key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return &v;
  return nullptr;
}

void ReportRecord::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw DomainError("ReportRecord: row has " + std::to_string(row.size()) + " values for " +
                      std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::size_t ReportRecord::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw DomainError("ReportRecord: no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string meta_text(const MetaValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  return std::get<std::string>(v);
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string render_csv(const ReportRecord& record) {
  std::string out;
  for (const auto& [k, v] : record.meta) out += "# " + k + ": " + meta_text(v) + "\n";
  for (std::size_t i = 0; i < record.columns.size(); ++i) {
    if (i) out += ',';
    out += record.columns[i];
  }
  out += '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const ReportRecord& record) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record.meta) {
    if (const auto* d = std::get_if<double>(&v))
      meta[k] = *d;
    else
      meta[k] = std::get<std::string>(v);
  }
  nlohmann::ordered_json doc;
  doc["meta"] = std::move(meta);
  doc["columns"] = record.columns;
  doc["rows"] = record.rows;
  return doc.dump(2) + "\n";
}

std::string render(const ReportRecord& record, ReportFormat format) {
  return format == ReportFormat::Csv ? render_csv(record) : render_json(record);
}

ReportRecord parse_csv(std::string_view text) {
  ReportRecord rec;
  bool header_seen = false;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (header_seen) throw DomainError("parse_csv: metadata after header");
      line.remove_prefix(std::min<std::size_t>(2, line.size()));
      const std::size_t colon = line.find(": ");
      if (colon == std::string_view::npos) throw DomainError("parse_csv: malformed metadata line");
      const std::string_view value = line.substr(colon + 2);
      double number = 0.0;
      if (parse_double(value, number))
        rec.meta.emplace_back(std::string(line.substr(0, colon)), number);
      else
        rec.meta.emplace_back(std::string(line.substr(0, colon)), std::string(value));
      continue;
    }
    if (!header_seen) {
      for (auto name : split(line, ',')) rec.columns.emplace_back(name);
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    for (auto cell : split(line, ',')) {
      double v = 0.0;
      if (!parse_double(cell, v)) throw DomainError("parse_csv: bad number '" + std::string(cell) + "'");
      row.push_back(v);
    }
    rec.add_row(std::move(row));
  }
  if (!header_seen) throw DomainError("parse_csv: missing header row");
  return rec;
}

}  // namespace cvbell
