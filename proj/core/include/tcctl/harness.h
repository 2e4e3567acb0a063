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
// Command implementations behind the tcctl tool: analyze, fit, simulate,
// control and sweep. They take resolved options, write their CSV artifacts
// and return the computed results so callers can inspect them.

#ifndef TCCTL_HARNESS_H_
#define TCCTL_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tcctl/controller.h"
#include "tcctl/encoder_sim.h"
#include "tcctl/error.h"
#include "tcctl/frame_model.h"
#include "tcctl/metrics.h"
#include "tcctl/preset_catalog.h"
#include "tcctl/tc_model.h"

namespace tcctl {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitConfiguration = 3;
inline constexpr int kExitDegenerateFit = 4;
inline constexpr int kExitUsage = 64;

int ExitCodeFor(ErrorKind kind);

struct AnalyzeOptions {
  std::string input;
  int width = 0;
  int height = 0;
  int64_t first_frame = 0;
  int64_t frame_count = 1;  // <= 0 means every frame from first_frame on
  std::string out_path;     // weight CSV
};

std::vector<WeightRecord> CmdAnalyze(const AnalyzeOptions& options);

struct FitOptions {
  std::string trace_path;
  int preset_filter = 0;
  std::string out_path;  // model file; empty skips writing
  ModelBounds bounds;
};

struct FitResult {
  TcModel model;
  double log_rmse = 0.0;
  size_t sample_count = 0;
};

FitResult CmdFit(const FitOptions& options);

struct SimulateOptions {
  SimParams sim;
  int frames = 10;
  int preset_id = 0;
  std::string out_path;  // trace CSV
};

std::vector<TraceRow> CmdSimulate(const SimulateOptions& options);

struct ControlOptions {
  std::string model_path;
  std::optional<std::string> catalog_path;
  // Backend: the simulator unless a trace is given.
  SimParams sim;
  std::optional<std::string> trace_path;
  int64_t trace_frame = 0;
  // Weights: a weight CSV, a video frame, or (simulator only) synthetic.
  std::optional<std::string> weights_path;
  std::optional<std::string> input;
  int width = 0;
  int height = 0;
  int64_t frame_index = 0;
  // Budget: absolute, or a ratio of a supplied or simulated baseline.
  std::optional<double> budget_ms;
  std::optional<double> budget_ratio;
  std::optional<double> baseline_ms;
  int window_cap = kDefaultWindowCap;
  std::string out_dir = ".";
};

struct ControlResult {
  FrameReport report;
  RunSummary summary;
};

// Writes decisions.csv, running_error.csv and summary.csv into out_dir.
ControlResult CmdControl(const ControlOptions& options);

struct SweepOptions {
  TcModel model;
  PresetCatalog catalog = PresetCatalog::Default();
  SimParams sim;
  std::vector<double> targets;
  int repeats = 1;
  int window_cap = kDefaultWindowCap;
  int threads = 1;
  // Frame weights for frame-derived simulation; synthetic otherwise.
  std::vector<CtuWeight> frame_weights;
};

struct SweepRow {
  double target_ratio = 0.0;
  int runs = 0;
  double mean_ts_pct = 0.0;
  double mean_te_pct = 0.0;
  double max_te_pct = 0.0;
  int saturated_runs = 0;
};

inline constexpr const char* kSweepHeader =
    "target_ratio,runs,mean_ts_pct,mean_te_pct,max_te_pct,saturated_runs";

// One simulated frame at `target` of its own preset-0 baseline.
RunSummary RunSimulatedTarget(const TcModel& model, const PresetCatalog& catalog,
                              const SimParams& sim, double target,
                              int window_cap,
                              const std::vector<CtuWeight>& frame_weights = {},
                              FrameReport* report = nullptr);

// Rows come back in target order regardless of thread scheduling.
std::vector<SweepRow> CmdSweep(const SweepOptions& options);
void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> ReadSweepCsv(std::istream& in,
                                   const std::string& source_name);
double MeanTePct(const std::vector<SweepRow>& rows);

}  // namespace tcctl

#endif  // TCCTL_HARNESS_H_
