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
// Encoder stand-ins. EncoderSimulator draws PlanarCost and encode times from
// a ground-truth power law with lognormal noise; TraceBackend replays times
// recorded from a real encoder.

#ifndef TCCTL_ENCODER_SIM_H_
#define TCCTL_ENCODER_SIM_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tcctl/config_file.h"
#include "tcctl/controller.h"
#include "tcctl/csv.h"
#include "tcctl/frame_model.h"
#include "tcctl/preset_catalog.h"

namespace tcctl {

enum class CostMode {
  kSynthetic,     // lognormal PlanarCost per CTU
  kFrameDerived,  // affine map of the CTU's SA8D weight
};

struct SimParams {
  double alpha_true = 0.004;
  double beta_true = 1.2;
  double machine_factor = 1.0;
  double noise_sigma = 0.05;
  uint64_t seed = 1;
  CostMode cost_mode = CostMode::kSynthetic;
  // Synthetic mode: ln(PlanarCost) ~ N(cost_log_mean, cost_log_sigma^2).
  double cost_log_mean = 12.2;  // median cost ~2e5
  double cost_log_sigma = 0.6;
  // Synthetic weights: PlanarCost * exp(N(0, weight_log_sigma^2)).
  double weight_log_sigma = 0.3;
  // Frame-derived mode: cost = scale * weight + offset.
  double frame_cost_scale = 0.5;
  double frame_cost_offset = 10000.0;
  int ctu_count = 240;

  // Throws ConfigurationError on out-of-range values.
  void Validate() const;
};

// Reads the [sim] section; absent keys keep their defaults.
SimParams SimParamsFromConfig(const ConfigFile& cfg);
void WriteSimParams(std::ostream& out, const SimParams& params);

// Deterministic given (seed, ctu_index). `weight` is required in
// frame-derived mode and ignored otherwise.
double SimPlanarCost(const SimParams& params, int ctu_index,
                     std::optional<int64_t> weight = std::nullopt);

// machine_factor * alpha_true * (cost/1000)^beta_true * time_ratio * noise.
double SimEncodeTime(const SimParams& params, double planar_cost,
                     const Preset& preset, std::mt19937_64& rng);

// Seed for an independent stream derived from (seed, stream, index).
uint64_t DeriveSeed(uint64_t seed, uint64_t stream, uint64_t index);

class EncoderSimulator : public EncoderBackend {
 public:
  // Synthetic mode.
  explicit EncoderSimulator(const SimParams& params);
  // Frame-derived mode uses `frame_weights` for cost; synthetic mode ignores them.
  EncoderSimulator(const SimParams& params, std::vector<CtuWeight> frame_weights);

  double PlanarCost(int ctu_index) override;
  double Encode(int ctu_index, const Preset& preset) override;

  int ctu_count() const;
  // Weights to pre-allocate with: the frame weights when given, otherwise
  // a noisy copy of the synthetic costs.
  std::vector<CtuWeight> Weights() const;

  const SimParams& params() const { return params_; }

 private:
  double CostOf(int ctu_index) const;

  SimParams params_;
  std::vector<CtuWeight> frame_weights_;
  std::mt19937_64 time_rng_;
};

// Sum of preset-0 times for the frame, drawing noise in the same order a
// controlled run with the same seed would.
double SimulateBaselineMs(const SimParams& params,
                          std::span<const CtuWeight> frame_weights = {});

struct TraceRow {
  int64_t frame = 0;
  int64_t ctu_index = 0;
  double planar_cost = 0.0;
  double luma_time_ms = 0.0;
  int preset_id = 0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

inline constexpr const char* kTraceHeader =
    "frame,ctu_index,planar_cost,luma_time_ms,preset_id";

// Streams trace rows, validating each and requiring strictly increasing
// (frame, ctu_index). Errors name the offending line.
class TraceReader {
 public:
  TraceReader(std::istream& in, std::string source_name);
  bool Next(TraceRow& row);

 private:
  csv::Reader reader_;
  std::optional<TraceRow> last_;
};

std::vector<TraceRow> ReadTrace(std::istream& in, const std::string& source_name);
std::vector<TraceRow> LoadTrace(const std::string& path);
void WriteTrace(std::ostream& out, std::span<const TraceRow> rows);

// Simulated trace over `frames` frames with every CTU coded at `preset`.
std::vector<TraceRow> GenerateTrace(const SimParams& params,
                                    const PresetCatalog& catalog, int frames,
                                    int preset_id = 0);

// Replays one frame of a trace. Encode rescales the recorded time from the
// recorded preset's ratio to the requested preset's ratio.
class TraceBackend : public EncoderBackend {
 public:
  TraceBackend(std::vector<TraceRow> frame_rows, PresetCatalog catalog);

  double PlanarCost(int ctu_index) override;
  double Encode(int ctu_index, const Preset& preset) override;
  int ctu_count() const { return static_cast<int>(rows_.size()); }

 private:
  const TraceRow& Row(int ctu_index) const;

  std::vector<TraceRow> rows_;
  PresetCatalog catalog_;
};

// Rows of `frame`, which must form CTUs 0..n-1. Throws FormatError otherwise.
std::vector<TraceRow> SelectTraceFrame(std::span<const TraceRow> rows,
                                       int64_t frame);

}  // namespace tcctl

#endif  // TCCTL_ENCODER_SIM_H_
