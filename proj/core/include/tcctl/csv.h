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
//
// Minimal CSV plumbing for the tool's own flat formats: no quoting, comma
// separated, one header line. Numbers are written in shortest round-trip form
// so every emitted file reads back bit-exactly.

#ifndef TCCTL_CSV_H_
#define TCCTL_CSV_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcctl::csv {

// Shortest decimal string that parses back to exactly `value`.
std::string FormatDouble(double value);

// Fixed-point rendering, used for human-facing summary tables.
std::string FormatFixed(double value, int decimals);

std::vector<std::string_view> Split(std::string_view line, char sep = ',');
std::string_view Trim(std::string_view s);

// Strict parsers: the whole field must be consumed. Throw ParseError naming
// `where` (usually "file:line") on failure.
double ParseDouble(std::string_view field, const std::string& where);
int64_t ParseInt(std::string_view field, const std::string& where);

struct Row {
  size_t line = 0;  // 1-based line number in the source
  std::vector<std::string_view> fields;
};

// Reads a CSV stream whose first line must equal `expected_header`.
// Blank lines are skipped. Every row must have as many fields as the header.
class Reader {
 public:
  Reader(std::istream& in, std::string source_name,
         std::string_view expected_header);

  // Returns false at end of input.
  bool Next(Row& row);

  const std::string& source_name() const { return source_name_; }
  std::string Where(size_t line) const;

 private:
  std::istream& in_;
  std::string source_name_;
  size_t columns_ = 0;
  size_t line_no_ = 0;
  std::string buffer_;
};

}  // namespace tcctl::csv

#endif  // TCCTL_CSV_H_
