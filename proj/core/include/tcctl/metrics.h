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
// Picture-level time metrics and the run summary record.

#ifndef TCCTL_METRICS_H_
#define TCCTL_METRICS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tcctl {

// |total_real - budget| / budget * 100.
double TimeErrorPct(double total_real_ms, double pic_budget_ms);
// (baseline - actual) / baseline * 100.
double TimeSavingPct(double baseline_ms, double actual_ms);

struct RunSummary {
  std::optional<double> target_ratio;  // budget / baseline when known
  double pic_budget_ms = 0.0;
  std::optional<double> baseline_ms;
  double total_real_ms = 0.0;
  double te_pct = 0.0;
  std::optional<double> ts_pct;  // against the luma-time baseline
  bool saturated = false;
  int ctu_count = 0;
  double fastest_preset_share = 0.0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

inline constexpr const char* kSummaryHeader =
    "target_ratio,pic_budget_ms,baseline_ms,total_real_ms,te_pct,ts_pct,"
    "saturated,ctu_count,fastest_preset_share";

void WriteSummaryCsv(std::ostream& out, const std::vector<RunSummary>& rows);
std::vector<RunSummary> ReadSummaryCsv(std::istream& in,
                                       const std::string& source_name);

}  // namespace tcctl

#endif  // TCCTL_METRICS_H_
