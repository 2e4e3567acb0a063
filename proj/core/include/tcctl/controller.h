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
// Picture-level complexity controller.
//
// One frame is processed as follows. The picture budget is split across CTUs
// in proportion to their SA8D weights. Then, for each CTU in raster order:
//   predicted  = calibrated model prediction from the CTU's PlanarCost
//   allocated  = budget + feedback, feedback = -accumulated_error / window
//   r_ctu      = allocated / predicted  ->  nearest preset
// After encoding, the CTU's overspend (real - allocated) is added to the
// accumulated error, and CTUs coded with preset 0 refresh the calibration.

#ifndef TCCTL_CONTROLLER_H_
#define TCCTL_CONTROLLER_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tcctl/frame_model.h"
#include "tcctl/preset_catalog.h"
#include "tcctl/tc_model.h"

namespace tcctl {

inline constexpr int kDefaultWindowCap = 20;

// What the feedback term redistributes.
enum class FeedbackBasis {
  // Accumulated error plus the feedback already applied, i.e. the deviation
  // sum(real - budget) not yet compensated.
  kOutstanding,
  // Accumulated error sum(real - allocated) alone. Corrections are never
  // retired, so the loop keeps pushing after the deviation is gone.
  kAccumulated,
};

struct ControllerConfig {
  double pic_budget_ms = 0.0;
  int window_cap = kDefaultWindowCap;
  FeedbackBasis feedback_basis = FeedbackBasis::kOutstanding;
  PresetCatalog catalog = PresetCatalog::Default();
  TcModel model;

  // Throws ConfigurationError on a non-positive budget or window cap.
  void Validate() const;
};

struct ControllerState {
  std::vector<double> budgets;  // per-CTU pre-allocated time, ms
  double accumulated_error_ms = 0.0;  // sum(real - allocated)
  double applied_feedback_ms = 0.0;   // sum of feedback over coded CTUs
  int coded_count = 0;
  int ctu_total = 0;
  CalibrationSums calibration;  // non-accelerated CTUs only
  double r_cpu = 1.0;           // calibration factor currently in force

  // sum(real - budget) over coded CTUs.
  double OutstandingErrorMs() const {
    return accumulated_error_ms + applied_feedback_ms;
  }
};

struct CtuDecision {
  int ctu_index = 0;
  double planar_cost = 0.0;
  double predicted_base_ms = 0.0;  // without r_cpu
  double predicted_ms = 0.0;       // with r_cpu
  double budget_ms = 0.0;
  double feedback_ms = 0.0;
  double allocated_ms = 0.0;       // budget_ms + feedback_ms
  double r_ctu = 0.0;              // allocated / predicted, 0 when allocated <= 0
  int preset_id = 0;
};

// Proportional split of `pic_budget_ms`. Throws ArgumentError on an empty
// list, a non-positive weight or a non-positive budget.
std::vector<double> Preallocate(std::span<const CtuWeight> weights,
                                double pic_budget_ms);

// max(1, min(ctu_left, window_cap)).
int WindowSize(int ctu_left, int window_cap);

// Correction added to the next CTU's budget: -error / window.
// Overspend (positive error) yields a negative correction.
double Feedback(double error_ms, int window);

ControllerState BeginFrame(const ControllerConfig& config,
                           std::span<const CtuWeight> weights);

// Throws SequencingError unless ctu_index == state.coded_count, and
// ArgumentError on a non-positive cost.
CtuDecision DecideCtu(const ControllerState& state,
                      const ControllerConfig& config, int ctu_index,
                      double planar_cost);

// Throws SequencingError for a decision that is not the next CTU and
// MeasurementError for a negative or non-finite real time.
ControllerState CommitCtu(ControllerState state, const CtuDecision& decision,
                          double real_ms, bool was_accelerated);

// Supplies PlanarCost and realized encode time per CTU.
class EncoderBackend {
 public:
  virtual ~EncoderBackend() = default;
  virtual double PlanarCost(int ctu_index) = 0;
  virtual double Encode(int ctu_index, const Preset& preset) = 0;
};

struct CtuLogEntry {
  CtuDecision decision;
  double real_ms = 0.0;
  double error_ms = 0.0;  // real_ms - allocated_ms
};

struct FrameReport {
  double pic_budget_ms = 0.0;
  std::vector<CtuLogEntry> log;
  // Per-CTU series; element k covers the first k+1 CTUs.
  std::vector<double> running_error_ms;      // accumulated error
  std::vector<double> running_deviation_ms;  // sum(real - budget)
  double total_real_ms = 0.0;
  double total_predicted_ms = 0.0;
  double accumulated_error_ms = 0.0;
  double final_r_cpu = 1.0;
  // Budget below what the fastest preset can reach for this frame.
  bool saturated = false;

  // Fraction of CTUs coded with preset `id`.
  double PresetShare(int id) const;
};

// Runs the whole frame. Backend exceptions are rethrown as BackendError
// carrying the CTU index.
FrameReport RunFrame(const ControllerConfig& config,
                     std::span<const CtuWeight> weights,
                     EncoderBackend& backend);

// Sums (real - allocated) over the log in order, the same way CommitCtu does.
double ReplayAccumulatedError(std::span<const CtuLogEntry> log);

// Decision log CSV.
inline constexpr const char* kDecisionLogHeader =
    "ctu_index,planar_cost,predicted_ms,budget_ms,feedback_ms,allocated_ms,"
    "r_ctu,preset_id,real_ms,error_ms";

void WriteDecisionLog(std::ostream& out, std::span<const CtuLogEntry> log);
std::vector<CtuLogEntry> ReadDecisionLog(std::istream& in,
                                         const std::string& source_name);

// Running error CSV. mean_error_ms is the deviation from budget so far
// divided by the number of coded CTUs.
inline constexpr const char* kRunningErrorHeader =
    "ctu_count,accumulated_error_ms,deviation_ms,mean_error_ms";

// Mean per-CTU deviation after each CTU: running_deviation_ms[k] / (k+1).
std::vector<double> RunningMeanError(const FrameReport& report);

void WriteRunningError(std::ostream& out, const FrameReport& report);

}  // namespace tcctl

#endif  // TCCTL_CONTROLLER_H_
