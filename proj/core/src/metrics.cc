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

#include "tcctl/metrics.h"

#include <cmath>
#include <istream>
#include <ostream>

#include "tcctl/csv.h"
#include "tcctl/error.h"

namespace tcctl {
namespace {

std::string OptionalField(const std::optional<double>& v) {
  return v ? csv::FormatDouble(*v) : std::string();
}

std::optional<double> ParseOptional(std::string_view field,
                                    const std::string& where) {
  if (csv::Trim(field).empty()) return std::nullopt;
  return csv::ParseDouble(field, where);
}

}  // namespace

double TimeErrorPct(double total_real_ms, double pic_budget_ms) {
  if (!(pic_budget_ms > 0.0)) throw ArgumentError("budget must be positive");
  return std::abs(total_real_ms - pic_budget_ms) / pic_budget_ms * 100.0;
}

double TimeSavingPct(double baseline_ms, double actual_ms) {
  if (!(baseline_ms > 0.0)) throw ArgumentError("baseline must be positive");
  return (baseline_ms - actual_ms) / baseline_ms * 100.0;
}

void WriteSummaryCsv(std::ostream& out, const std::vector<RunSummary>& rows) {
  out << kSummaryHeader << '\n';
  for (const RunSummary& s : rows) {
    out << OptionalField(s.target_ratio) << ','
        << csv::FormatDouble(s.pic_budget_ms) << ','
        << OptionalField(s.baseline_ms) << ','
        << csv::FormatDouble(s.total_real_ms) << ','
        << csv::FormatDouble(s.te_pct) << ',' << OptionalField(s.ts_pct) << ','
        << (s.saturated ? 1 : 0) << ',' << s.ctu_count << ','
        << csv::FormatDouble(s.fastest_preset_share) << '\n';
  }
}

std::vector<RunSummary> ReadSummaryCsv(std::istream& in,
                                       const std::string& source_name) {
  csv::Reader reader(in, source_name, kSummaryHeader);
  std::vector<RunSummary> rows;
  csv::Row row;
  while (reader.Next(row)) {
    const std::string where = reader.Where(row.line);
    RunSummary s;
    s.target_ratio = ParseOptional(row.fields[0], where);
    s.pic_budget_ms = csv::ParseDouble(row.fields[1], where);
    s.baseline_ms = ParseOptional(row.fields[2], where);
    s.total_real_ms = csv::ParseDouble(row.fields[3], where);
    s.te_pct = csv::ParseDouble(row.fields[4], where);
    s.ts_pct = ParseOptional(row.fields[5], where);
    const int64_t saturated = csv::ParseInt(row.fields[6], where);
    if (saturated != 0 && saturated != 1) {
      throw ParseError(where + ": saturated must be 0 or 1");
    }
    s.saturated = saturated == 1;
    s.ctu_count = static_cast<int>(csv::ParseInt(row.fields[7], where));
    s.fastest_preset_share = csv::ParseDouble(row.fields[8], where);
    rows.push_back(s);
  }
  return rows;
}

}  // namespace tcctl
