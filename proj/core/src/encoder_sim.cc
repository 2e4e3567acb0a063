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

#include "tcctl/encoder_sim.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "tcctl/error.h"

namespace tcctl {
namespace {

enum Stream : uint64_t {
  kCostStream = 1,
  kWeightStream = 2,
  kTimeStream = 3,
  kFrameStream = 4,
};

double StandardNormal(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void SimParams::Validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  const auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!positive(alpha_true)) throw ConfigurationError("alpha_true must be > 0");
  if (!std::isfinite(beta_true)) throw ConfigurationError("beta_true must be finite");
  if (!positive(machine_factor)) throw ConfigurationError("machine_factor must be > 0");
  if (!non_negative(noise_sigma)) throw ConfigurationError("noise_sigma must be >= 0");
  if (!std::isfinite(cost_log_mean)) throw ConfigurationError("cost_log_mean must be finite");
  if (!non_negative(cost_log_sigma)) throw ConfigurationError("cost_log_sigma must be >= 0");
  if (!non_negative(weight_log_sigma)) throw ConfigurationError("weight_log_sigma must be >= 0");
  if (!positive(frame_cost_scale)) throw ConfigurationError("frame_cost_scale must be > 0");
  if (!non_negative(frame_cost_offset)) throw ConfigurationError("frame_cost_offset must be >= 0");
  if (ctu_count < 1) throw ConfigurationError("ctu_count must be >= 1");
}

SimParams SimParamsFromConfig(const ConfigFile& cfg) {
  const std::string s = "sim";
  SimParams p;
  p.alpha_true = cfg.GetDouble(s, "alpha_true", p.alpha_true);
  p.beta_true = cfg.GetDouble(s, "beta_true", p.beta_true);
  p.machine_factor = cfg.GetDouble(s, "machine_factor", p.machine_factor);
  p.noise_sigma = cfg.GetDouble(s, "noise_sigma", p.noise_sigma);
  const long long seed = cfg.GetInt(s, "seed", static_cast<long long>(p.seed));
  if (seed < 0) throw ConfigurationError("seed must be non-negative");
  p.seed = static_cast<uint64_t>(seed);
  if (const auto mode = cfg.Get(s, "cost_mode")) {
    if (*mode == "synthetic") {
      p.cost_mode = CostMode::kSynthetic;
    } else if (*mode == "frame") {
      p.cost_mode = CostMode::kFrameDerived;
    } else {
      throw ConfigurationError("cost_mode must be 'synthetic' or 'frame', got '" +
                               *mode + "'");
    }
  }
  p.cost_log_mean = cfg.GetDouble(s, "cost_log_mean", p.cost_log_mean);
  p.cost_log_sigma = cfg.GetDouble(s, "cost_log_sigma", p.cost_log_sigma);
  p.weight_log_sigma = cfg.GetDouble(s, "weight_log_sigma", p.weight_log_sigma);
  p.frame_cost_scale = cfg.GetDouble(s, "frame_cost_scale", p.frame_cost_scale);
  p.frame_cost_offset = cfg.GetDouble(s, "frame_cost_offset", p.frame_cost_offset);
  p.ctu_count = static_cast<int>(cfg.GetInt(s, "ctu_count", p.ctu_count));
  p.Validate();
  return p;
}

void WriteSimParams(std::ostream& out, const SimParams& p) {
  ConfigFile cfg;
  const std::string s = "sim";
  cfg.Set(s, "alpha_true", csv::FormatDouble(p.alpha_true));
  cfg.Set(s, "beta_true", csv::FormatDouble(p.beta_true));
  cfg.Set(s, "machine_factor", csv::FormatDouble(p.machine_factor));
  cfg.Set(s, "noise_sigma", csv::FormatDouble(p.noise_sigma));
  cfg.Set(s, "seed", std::to_string(p.seed));
  cfg.Set(s, "cost_mode",
          p.cost_mode == CostMode::kSynthetic ? "synthetic" : "frame");
  cfg.Set(s, "cost_log_mean", csv::FormatDouble(p.cost_log_mean));
  cfg.Set(s, "cost_log_sigma", csv::FormatDouble(p.cost_log_sigma));
  cfg.Set(s, "weight_log_sigma", csv::FormatDouble(p.weight_log_sigma));
  cfg.Set(s, "frame_cost_scale", csv::FormatDouble(p.frame_cost_scale));
  cfg.Set(s, "frame_cost_offset", csv::FormatDouble(p.frame_cost_offset));
  cfg.Set(s, "ctu_count", std::to_string(p.ctu_count));
  cfg.Write(out);
}

uint64_t DeriveSeed(uint64_t seed, uint64_t stream, uint64_t index) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ stream) + index);
}

double SimPlanarCost(const SimParams& params, int ctu_index,
                     std::optional<int64_t> weight) {
  if (params.cost_mode == CostMode::kFrameDerived) {
    if (!weight) {
      throw ArgumentError("frame-derived cost needs the CTU's SA8D weight");
    }
    return params.frame_cost_scale * static_cast<double>(*weight) +
           params.frame_cost_offset;
  }
  std::mt19937_64 rng(DeriveSeed(params.seed, kCostStream,
                                 static_cast<uint64_t>(ctu_index)));
  return std::exp(params.cost_log_mean +
                  params.cost_log_sigma * StandardNormal(rng));
}

double SimEncodeTime(const SimParams& params, double planar_cost,
                     const Preset& preset, std::mt19937_64& rng) {
  const double z = StandardNormal(rng);
  return params.machine_factor * params.alpha_true *
         std::pow(planar_cost / 1000.0, params.beta_true) *
         preset.time_ratio() * std::exp(params.noise_sigma * z);
}

EncoderSimulator::EncoderSimulator(const SimParams& params)
    : EncoderSimulator(params, {}) {}

EncoderSimulator::EncoderSimulator(const SimParams& params,
                                   std::vector<CtuWeight> frame_weights)
    : params_(params),
      frame_weights_(std::move(frame_weights)),
      time_rng_(DeriveSeed(params.seed, kTimeStream, 0)) {
  params_.Validate();
  if (params_.cost_mode == CostMode::kFrameDerived && frame_weights_.empty()) {
    throw ConfigurationError("frame-derived simulation needs frame weights");
  }
}

int EncoderSimulator::ctu_count() const {
  return frame_weights_.empty() ? params_.ctu_count
                                : static_cast<int>(frame_weights_.size());
}

double EncoderSimulator::CostOf(int ctu_index) const {
  if (ctu_index < 0 || ctu_index >= ctu_count()) {
    throw RangeError("simulator has no CTU " + std::to_string(ctu_index));
  }
  std::optional<int64_t> weight;
  if (!frame_weights_.empty()) {
    weight = frame_weights_[static_cast<size_t>(ctu_index)].weight;
  }
  return SimPlanarCost(params_, ctu_index, weight);
}

double EncoderSimulator::PlanarCost(int ctu_index) { return CostOf(ctu_index); }

double EncoderSimulator::Encode(int ctu_index, const Preset& preset) {
  return SimEncodeTime(params_, CostOf(ctu_index), preset, time_rng_);
}

std::vector<CtuWeight> EncoderSimulator::Weights() const {
  if (!frame_weights_.empty()) return frame_weights_;
  std::vector<CtuWeight> weights;
  weights.reserve(static_cast<size_t>(params_.ctu_count));
  for (int i = 0; i < params_.ctu_count; ++i) {
    std::mt19937_64 rng(
        DeriveSeed(params_.seed, kWeightStream, static_cast<uint64_t>(i)));
    const double w =
        CostOf(i) * std::exp(params_.weight_log_sigma * StandardNormal(rng));
    weights.push_back({i, std::max<int64_t>(1, std::llround(w))});
  }
  return weights;
}

double SimulateBaselineMs(const SimParams& params,
                          std::span<const CtuWeight> frame_weights) {
  EncoderSimulator sim(params, std::vector<CtuWeight>(frame_weights.begin(),
                                                      frame_weights.end()));
  const Preset unconstrained = PresetCatalog::Default()[0];
  double total = 0.0;
  for (int i = 0; i < sim.ctu_count(); ++i) total += sim.Encode(i, unconstrained);
  return total;
}

TraceReader::TraceReader(std::istream& in, std::string source_name)
    : reader_(in, std::move(source_name), kTraceHeader) {}

bool TraceReader::Next(TraceRow& row) {
  csv::Row raw;
  if (!reader_.Next(raw)) return false;
  const std::string where = reader_.Where(raw.line);
  row.frame = csv::ParseInt(raw.fields[0], where);
  row.ctu_index = csv::ParseInt(raw.fields[1], where);
  row.planar_cost = csv::ParseDouble(raw.fields[2], where);
  row.luma_time_ms = csv::ParseDouble(raw.fields[3], where);
  row.preset_id = static_cast<int>(csv::ParseInt(raw.fields[4], where));
  if (row.frame < 0 || row.ctu_index < 0) {
    throw ParseError(where + ": negative frame or CTU index");
  }
  if (!(row.planar_cost > 0.0)) {
    throw ParseError(where + ": planar_cost must be positive");
  }
  if (!(row.luma_time_ms > 0.0)) {
    throw ParseError(where + ": luma_time_ms must be positive");
  }
  if (row.preset_id < 0) throw ParseError(where + ": negative preset_id");
  if (last_ && !(row.frame > last_->frame ||
                 (row.frame == last_->frame && row.ctu_index > last_->ctu_index))) {
    throw FormatError(where + ": rows must be ordered by (frame, ctu_index)");
  }
  last_ = row;
  return true;
}

std::vector<TraceRow> ReadTrace(std::istream& in, const std::string& source_name) {
  TraceReader reader(in, source_name);
  std::vector<TraceRow> rows;
  TraceRow row;
  while (reader.Next(row)) rows.push_back(row);
  return rows;
}

std::vector<TraceRow> LoadTrace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open trace '" + path + "'");
  return ReadTrace(in, path);
}

void WriteTrace(std::ostream& out, std::span<const TraceRow> rows) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : rows) {
    out << r.frame << ',' << r.ctu_index << ',' << csv::FormatDouble(r.planar_cost)
        << ',' << csv::FormatDouble(r.luma_time_ms) << ',' << r.preset_id << '\n';
  }
}

std::vector<TraceRow> GenerateTrace(const SimParams& params,
                                    const PresetCatalog& catalog, int frames,
                                    int preset_id) {
  if (frames < 1) throw ArgumentError("trace needs at least one frame");
  const Preset& preset = catalog.at(preset_id);
  std::vector<TraceRow> rows;
  for (int f = 0; f < frames; ++f) {
    SimParams frame_params = params;
    frame_params.seed =
        DeriveSeed(params.seed, kFrameStream, static_cast<uint64_t>(f));
    EncoderSimulator sim(frame_params);
    for (int i = 0; i < sim.ctu_count(); ++i) {
      rows.push_back({f, i, sim.PlanarCost(i), sim.Encode(i, preset), preset_id});
    }
  }
  return rows;
}

TraceBackend::TraceBackend(std::vector<TraceRow> frame_rows, PresetCatalog catalog)
    : rows_(std::move(frame_rows)), catalog_(std::move(catalog)) {
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].ctu_index != static_cast<int64_t>(i)) {
      throw FormatError("trace frame must list CTUs 0..n-1 in order");
    }
    catalog_.at(rows_[i].preset_id);
  }
}

const TraceRow& TraceBackend::Row(int ctu_index) const {
  if (ctu_index < 0 || ctu_index >= ctu_count()) {
    throw RangeError("trace has no CTU " + std::to_string(ctu_index));
  }
  return rows_[static_cast<size_t>(ctu_index)];
}

double TraceBackend::PlanarCost(int ctu_index) { return Row(ctu_index).planar_cost; }

double TraceBackend::Encode(int ctu_index, const Preset& preset) {
  const TraceRow& row = Row(ctu_index);
  return row.luma_time_ms * preset.time_ratio() /
         catalog_.at(row.preset_id).time_ratio();
}

std::vector<TraceRow> SelectTraceFrame(std::span<const TraceRow> rows,
                                       int64_t frame) {
  std::vector<TraceRow> out;
  for (const TraceRow& r : rows) {
    if (r.frame == frame) out.push_back(r);
  }
  if (out.empty()) {
    throw RangeError("trace has no rows for frame " + std::to_string(frame));
  }
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i].ctu_index != static_cast<int64_t>(i)) {
      throw FormatError("trace frame " + std::to_string(frame) +
                        " does not list CTUs 0..n-1");
    }
  }
  return out;
}

}  // namespace tcctl
