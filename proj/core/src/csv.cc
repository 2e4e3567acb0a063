// Copyright 2026 The tcctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// -----------------------------------------------------------------------------

#include "tcctl/csv.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>

#include "tcctl/error.h"

namespace tcctl::csv {

std::string FormatDouble(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

std::string_view Trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(Trim(line.substr(start)));
      break;
    }
    out.push_back(Trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

double ParseDouble(std::string_view field, const std::string& where) {
  field = Trim(field);
  double value = 0.0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || res.ec != std::errc() ||
      res.ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw ParseError(where + ": expected a finite number, got '" +
                     std::string(field) + "'");
  }
  return value;
}

int64_t ParseInt(std::string_view field, const std::string& where) {
  field = Trim(field);
  int64_t value = 0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || res.ec != std::errc() ||
      res.ptr != field.data() + field.size()) {
    throw ParseError(where + ": expected an integer, got '" +
                     std::string(field) + "'");
  }
  return value;
}

Reader::Reader(std::istream& in, std::string source_name,
               std::string_view expected_header)
    : in_(in), source_name_(std::move(source_name)) {
  std::string header;
  if (!std::getline(in_, header)) {
    throw ParseError(source_name_ + ": missing header line");
  }
  ++line_no_;
  if (Trim(header) != expected_header) {
    throw ParseError(Where(line_no_) + ": expected header '" +
                     std::string(expected_header) + "', got '" +
                     std::string(Trim(header)) + "'");
  }
  columns_ = Split(expected_header).size();
}

std::string Reader::Where(size_t line) const {
  return source_name_ + ":" + std::to_string(line);
}

bool Reader::Next(Row& row) {
  while (std::getline(in_, buffer_)) {
    ++line_no_;
    if (Trim(buffer_).empty()) continue;
    row.line = line_no_;
    row.fields = Split(buffer_);
    if (row.fields.size() != columns_) {
      throw ParseError(Where(line_no_) + ": expected " +
                       std::to_string(columns_) + " fields, got " +
                       std::to_string(row.fields.size()));
    }
    return true;
  }
  return false;
}

}  // namespace tcctl::csv
