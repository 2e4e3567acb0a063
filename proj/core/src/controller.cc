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

#include "tcctl/controller.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <istream>
#include <ostream>

#include "tcctl/csv.h"
#include "tcctl/error.h"

namespace tcctl {

void ControllerConfig::Validate() const {
  if (!(std::isfinite(pic_budget_ms) && pic_budget_ms > 0.0)) {
    throw ConfigurationError("picture budget must be positive, got " +
                             csv::FormatDouble(pic_budget_ms) + " ms");
  }
  if (window_cap < 1) {
    throw ConfigurationError("window cap must be at least 1");
  }
  ValidateModel(model, ModelBounds{-1e9, 1e9});
}

std::vector<double> Preallocate(std::span<const CtuWeight> weights,
                                double pic_budget_ms) {
  if (weights.empty()) throw ArgumentError("no CTU weights to allocate over");
  if (!(std::isfinite(pic_budget_ms) && pic_budget_ms > 0.0)) {
    throw ArgumentError("picture budget must be positive");
  }
  double total = 0.0;
  for (const CtuWeight& w : weights) {
    if (w.weight <= 0) {
      throw ArgumentError("CTU " + std::to_string(w.ctu_index) +
                          " has non-positive weight");
    }
    total += static_cast<double>(w.weight);
  }
  std::vector<double> budgets;
  budgets.reserve(weights.size());
  for (const CtuWeight& w : weights) {
    budgets.push_back(static_cast<double>(w.weight) / total * pic_budget_ms);
  }
  return budgets;
}

int WindowSize(int ctu_left, int window_cap) {
  return std::max(1, std::min(ctu_left, window_cap));
}

double Feedback(double error_ms, int window) {
  if (window < 1) throw ArgumentError("feedback window must be at least 1");
  return -error_ms / static_cast<double>(window);
}

ControllerState BeginFrame(const ControllerConfig& config,
                           std::span<const CtuWeight> weights) {
  config.Validate();
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].ctu_index != static_cast<int>(i)) {
      throw ArgumentError("CTU weights must be in raster order starting at 0");
    }
  }
  ControllerState state;
  state.budgets = Preallocate(weights, config.pic_budget_ms);
  state.ctu_total = static_cast<int>(weights.size());
  state.r_cpu = config.model.r_cpu;
  return state;
}

CtuDecision DecideCtu(const ControllerState& state,
                      const ControllerConfig& config, int ctu_index,
                      double planar_cost) {
  if (ctu_index != state.coded_count || ctu_index >= state.ctu_total) {
    throw SequencingError("expected CTU " + std::to_string(state.coded_count) +
                          " of " + std::to_string(state.ctu_total) +
                          ", got " + std::to_string(ctu_index));
  }
  if (!(std::isfinite(planar_cost) && planar_cost > 0.0)) {
    throw ArgumentError("CTU " + std::to_string(ctu_index) +
                        " has non-positive PlanarCost");
  }
  CtuDecision d;
  d.ctu_index = ctu_index;
  d.planar_cost = planar_cost;
  d.predicted_base_ms = PredictBase(config.model, planar_cost);
  d.predicted_ms = state.r_cpu * d.predicted_base_ms;
  d.budget_ms = state.budgets[static_cast<size_t>(ctu_index)];
  const int ctu_left = state.ctu_total - state.coded_count;
  const double error_ms = config.feedback_basis == FeedbackBasis::kOutstanding
                              ? state.OutstandingErrorMs()
                              : state.accumulated_error_ms;
  d.feedback_ms = Feedback(error_ms, WindowSize(ctu_left, config.window_cap));
  d.allocated_ms = d.budget_ms + d.feedback_ms;
  d.r_ctu = d.allocated_ms > 0.0 && d.predicted_ms > 0.0
                ? d.allocated_ms / d.predicted_ms
                : 0.0;
  d.preset_id = config.catalog.Select(d.r_ctu).id;
  return d;
}

ControllerState CommitCtu(ControllerState state, const CtuDecision& decision,
                          double real_ms, bool was_accelerated) {
  if (decision.ctu_index != state.coded_count) {
    throw SequencingError("commit for CTU " +
                          std::to_string(decision.ctu_index) + " but CTU " +
                          std::to_string(state.coded_count) + " is next");
  }
  if (!std::isfinite(real_ms) || real_ms < 0.0) {
    throw MeasurementError("CTU " + std::to_string(decision.ctu_index) +
                           " reported invalid time " +
                           csv::FormatDouble(real_ms) + " ms");
  }
  state.accumulated_error_ms += real_ms - decision.allocated_ms;
  state.applied_feedback_ms += decision.feedback_ms;
  ++state.coded_count;
  if (!was_accelerated) {
    state.calibration.Add(decision.predicted_base_ms, real_ms);
    // A zero-time first sample leaves r_cpu where it was.
    if (state.calibration.real_sum_ms() > 0.0) {
      state.r_cpu = state.calibration.Ratio();
    }
  }
  return state;
}

double FrameReport::PresetShare(int id) const {
  if (log.empty()) return 0.0;
  const auto n = std::count_if(log.begin(), log.end(), [id](const CtuLogEntry& e) {
    return e.decision.preset_id == id;
  });
  return static_cast<double>(n) / static_cast<double>(log.size());
}

FrameReport RunFrame(const ControllerConfig& config,
                     std::span<const CtuWeight> weights,
                     EncoderBackend& backend) {
  ControllerState state = BeginFrame(config, weights);
  FrameReport report;
  report.pic_budget_ms = config.pic_budget_ms;
  report.log.reserve(weights.size());
  report.running_error_ms.reserve(weights.size());
  report.running_deviation_ms.reserve(weights.size());

  for (int i = 0; i < state.ctu_total; ++i) {
    double cost = 0.0;
    try {
      cost = backend.PlanarCost(i);
    } catch (const std::exception& e) {
      throw BackendError("CTU " + std::to_string(i) + ": " + e.what());
    }
    const CtuDecision decision = DecideCtu(state, config, i, cost);
    double real_ms = 0.0;
    try {
      real_ms = backend.Encode(i, config.catalog.at(decision.preset_id));
    } catch (const std::exception& e) {
      throw BackendError("CTU " + std::to_string(i) + ": " + e.what());
    }
    state = CommitCtu(std::move(state), decision, real_ms,
                      decision.preset_id != 0);
    report.log.push_back({decision, real_ms, real_ms - decision.allocated_ms});
    report.running_error_ms.push_back(state.accumulated_error_ms);
    report.running_deviation_ms.push_back(state.OutstandingErrorMs());
    report.total_real_ms += real_ms;
    report.total_predicted_ms += decision.predicted_ms;
  }
  report.accumulated_error_ms = state.accumulated_error_ms;
  report.final_r_cpu = state.r_cpu;
  report.saturated =
      config.pic_budget_ms < config.catalog.floor_ratio() * report.total_predicted_ms;
  return report;
}

double ReplayAccumulatedError(std::span<const CtuLogEntry> log) {
  double acc = 0.0;
  for (const CtuLogEntry& e : log) acc += e.real_ms - e.decision.allocated_ms;
  return acc;
}

void WriteDecisionLog(std::ostream& out, std::span<const CtuLogEntry> log) {
  out << kDecisionLogHeader << '\n';
  for (const CtuLogEntry& e : log) {
    const CtuDecision& d = e.decision;
    out << d.ctu_index << ',' << csv::FormatDouble(d.planar_cost) << ','
        << csv::FormatDouble(d.predicted_ms) << ','
        << csv::FormatDouble(d.budget_ms) << ','
        << csv::FormatDouble(d.feedback_ms) << ','
        << csv::FormatDouble(d.allocated_ms) << ','
        << csv::FormatDouble(d.r_ctu) << ',' << d.preset_id << ','
        << csv::FormatDouble(e.real_ms) << ',' << csv::FormatDouble(e.error_ms)
        << '\n';
  }
}

std::vector<CtuLogEntry> ReadDecisionLog(std::istream& in,
                                         const std::string& source_name) {
  csv::Reader reader(in, source_name, kDecisionLogHeader);
  std::vector<CtuLogEntry> log;
  csv::Row row;
  while (reader.Next(row)) {
    const std::string where = reader.Where(row.line);
    CtuLogEntry e;
    CtuDecision& d = e.decision;
    d.ctu_index = static_cast<int>(csv::ParseInt(row.fields[0], where));
    d.planar_cost = csv::ParseDouble(row.fields[1], where);
    d.predicted_ms = csv::ParseDouble(row.fields[2], where);
    d.predicted_base_ms = d.predicted_ms;  // r_cpu is not logged
    d.budget_ms = csv::ParseDouble(row.fields[3], where);
    d.feedback_ms = csv::ParseDouble(row.fields[4], where);
    d.allocated_ms = csv::ParseDouble(row.fields[5], where);
    d.r_ctu = csv::ParseDouble(row.fields[6], where);
    d.preset_id = static_cast<int>(csv::ParseInt(row.fields[7], where));
    e.real_ms = csv::ParseDouble(row.fields[8], where);
    e.error_ms = csv::ParseDouble(row.fields[9], where);
    if (d.ctu_index != static_cast<int>(log.size())) {
      throw FormatError(where + ": decision log rows must be in CTU order");
    }
    log.push_back(e);
  }
  return log;
}

std::vector<double> RunningMeanError(const FrameReport& report) {
  std::vector<double> mean;
  mean.reserve(report.running_deviation_ms.size());
  for (size_t k = 0; k < report.running_deviation_ms.size(); ++k) {
    mean.push_back(report.running_deviation_ms[k] / static_cast<double>(k + 1));
  }
  return mean;
}

void WriteRunningError(std::ostream& out, const FrameReport& report) {
  out << kRunningErrorHeader << '\n';
  const std::vector<double> mean = RunningMeanError(report);
  for (size_t k = 0; k < mean.size(); ++k) {
    out << (k + 1) << ',' << csv::FormatDouble(report.running_error_ms[k]) << ','
        << csv::FormatDouble(report.running_deviation_ms[k]) << ','
        << csv::FormatDouble(mean[k]) << '\n';
  }
}

}  // namespace tcctl
