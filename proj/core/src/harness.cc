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

#include "tcctl/harness.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <thread>

#include "tcctl/csv.h"
#include "tcctl/error.h"

namespace tcctl {
namespace {

constexpr uint64_t kSweepStream = 5;

std::ofstream OpenOutput(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  return out;
}

std::vector<CtuWeight> WeightsFromRecords(const std::vector<WeightRecord>& records,
                                          const std::string& source) {
  if (records.empty()) {
    throw ConfigurationError("weight file '" + source + "' has no rows");
  }
  const int64_t frame = records.front().frame;
  std::vector<CtuWeight> weights;
  for (const WeightRecord& r : records) {
    if (r.frame != frame) break;
    if (r.geom.index != static_cast<int>(weights.size())) {
      throw FormatError("weight file '" + source +
                        "' does not list CTUs 0..n-1 for frame " +
                        std::to_string(frame));
    }
    weights.push_back({r.geom.index, r.weight > 0 ? r.weight : 1});
  }
  return weights;
}

RunSummary Summarize(const FrameReport& report, std::optional<double> baseline_ms) {
  RunSummary s;
  s.pic_budget_ms = report.pic_budget_ms;
  s.baseline_ms = baseline_ms;
  if (baseline_ms) {
    s.target_ratio = report.pic_budget_ms / *baseline_ms;
    s.ts_pct = TimeSavingPct(*baseline_ms, report.total_real_ms);
  }
  s.total_real_ms = report.total_real_ms;
  s.te_pct = TimeErrorPct(report.total_real_ms, report.pic_budget_ms);
  s.saturated = report.saturated;
  s.ctu_count = static_cast<int>(report.log.size());
  return s;
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
    case ErrorKind::kFormat:
    case ErrorKind::kTruncation:
      return kExitParse;
    case ErrorKind::kConfiguration:
      return kExitConfiguration;
    case ErrorKind::kDegenerateFit:
      return kExitDegenerateFit;
    case ErrorKind::kArgument:
    case ErrorKind::kRange:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

std::vector<WeightRecord> CmdAnalyze(const AnalyzeOptions& options) {
  const VideoInfo info = ProbeVideo(options.input, options.width, options.height);
  if (options.first_frame < 0) throw RangeError("first frame must be >= 0");
  int64_t last = info.frame_count;
  if (options.frame_count > 0) last = options.first_frame + options.frame_count;
  if (options.first_frame >= last) {
    // Let LoadFrame report truncation or range precisely.
    LoadFrame(options.input, options.width, options.height, options.first_frame);
  }

  std::vector<WeightRecord> records;
  const auto geoms = PartitionCtus(info.width, info.height);
  std::ofstream out;
  if (!options.out_path.empty()) {
    out = OpenOutput(options.out_path);
    WriteWeightCsvHeader(out);
  }
  for (int64_t f = options.first_frame; f < last; ++f) {
    const FramePlane plane = LoadFrame(options.input, options.width,
                                       options.height, f);
    std::vector<CtuWeight> weights;
    weights.reserve(geoms.size());
    for (const CtuGeometry& g : geoms) weights.push_back(ComputeCtuWeight(plane, g));
    if (out.is_open()) WriteWeightCsvRows(out, f, geoms, weights);
    for (size_t i = 0; i < geoms.size(); ++i) {
      records.push_back({f, geoms[i], weights[i].weight});
    }
  }
  return records;
}

FitResult CmdFit(const FitOptions& options) {
  const std::vector<TraceRow> rows = LoadTrace(options.trace_path);
  std::vector<FitSample> samples;
  for (const TraceRow& r : rows) {
    if (r.preset_id == options.preset_filter) {
      samples.push_back(MakeFitSample(r.planar_cost, r.luma_time_ms));
    }
  }
  FitResult result;
  result.model = FitModel(samples, options.bounds);
  result.log_rmse = LogSpaceRmse(result.model, samples);
  result.sample_count = samples.size();
  if (!options.out_path.empty()) {
    std::ofstream out = OpenOutput(options.out_path);
    WriteModel(out, result.model);
  }
  return result;
}

std::vector<TraceRow> CmdSimulate(const SimulateOptions& options) {
  options.sim.Validate();
  const auto rows = GenerateTrace(options.sim, PresetCatalog::Default(),
                                  options.frames, options.preset_id);
  if (!options.out_path.empty()) {
    std::ofstream out = OpenOutput(options.out_path);
    WriteTrace(out, rows);
  }
  return rows;
}

ControlResult CmdControl(const ControlOptions& options) {
  if (options.model_path.empty()) {
    throw ConfigurationError("control needs a model file (--model)");
  }
  ControllerConfig config;
  config.model = LoadModel(options.model_path);
  if (options.catalog_path) config.catalog = LoadCatalog(*options.catalog_path);
  config.window_cap = options.window_cap;

  std::vector<CtuWeight> weights;
  if (options.weights_path) {
    std::ifstream in(*options.weights_path);
    if (!in) {
      throw ConfigurationError("cannot open weights '" + *options.weights_path + "'");
    }
    weights = WeightsFromRecords(ReadWeightCsv(in, *options.weights_path),
                                 *options.weights_path);
  } else if (options.input) {
    weights = ComputeFrameWeights(LoadFrame(*options.input, options.width,
                                            options.height, options.frame_index));
  }

  std::unique_ptr<EncoderBackend> backend;
  std::optional<double> baseline = options.baseline_ms;
  int backend_ctus = 0;
  if (options.trace_path) {
    if (weights.empty()) {
      throw ConfigurationError(
          "trace replay needs CTU weights (--weights or --input)");
    }
    auto trace = std::make_unique<TraceBackend>(
        SelectTraceFrame(LoadTrace(*options.trace_path), options.trace_frame),
        config.catalog);
    backend_ctus = trace->ctu_count();
    if (!baseline) {
      double total = 0.0;
      for (int i = 0; i < backend_ctus; ++i) {
        total += trace->Encode(i, config.catalog[0]);
      }
      baseline = total;
    }
    backend = std::move(trace);
  } else {
    SimParams sim = options.sim;
    std::vector<CtuWeight> frame_weights;
    if (sim.cost_mode == CostMode::kFrameDerived) {
      if (weights.empty()) {
        throw ConfigurationError(
            "frame-derived simulation needs CTU weights (--weights or --input)");
      }
      frame_weights = weights;
    } else if (!weights.empty()) {
      sim.ctu_count = static_cast<int>(weights.size());
    }
    auto simulator = std::make_unique<EncoderSimulator>(sim, frame_weights);
    if (weights.empty()) weights = simulator->Weights();
    backend_ctus = simulator->ctu_count();
    if (!baseline) baseline = SimulateBaselineMs(sim, frame_weights);
    backend = std::move(simulator);
  }
  if (backend_ctus != static_cast<int>(weights.size())) {
    throw ConfigurationError("backend has " + std::to_string(backend_ctus) +
                             " CTUs but weights cover " +
                             std::to_string(weights.size()));
  }

  if (baseline && !(*baseline > 0.0)) {
    throw ConfigurationError("baseline must be positive");
  }

  if (options.budget_ms.has_value() == options.budget_ratio.has_value()) {
    throw ConfigurationError(
        "give exactly one of --budget-ms or --budget-ratio");
  }
  if (options.budget_ms) {
    config.pic_budget_ms = *options.budget_ms;
  } else {
    if (!(*options.budget_ratio > 0.0)) {
      throw ConfigurationError("budget ratio must be positive");
    }
    config.pic_budget_ms = *options.budget_ratio * *baseline;
  }

  ControlResult result;
  result.report = RunFrame(config, weights, *backend);
  result.summary = Summarize(result.report, baseline);
  result.summary.fastest_preset_share =
      result.report.PresetShare(config.catalog.fastest().id);

  const std::filesystem::path dir(options.out_dir);
  {
    std::ofstream out = OpenOutput((dir / "decisions.csv").string());
    WriteDecisionLog(out, result.report.log);
  }
  {
    std::ofstream out = OpenOutput((dir / "running_error.csv").string());
    WriteRunningError(out, result.report);
  }
  {
    std::ofstream out = OpenOutput((dir / "summary.csv").string());
    WriteSummaryCsv(out, {result.summary});
  }
  return result;
}

RunSummary RunSimulatedTarget(const TcModel& model, const PresetCatalog& catalog,
                              const SimParams& sim, double target,
                              int window_cap,
                              const std::vector<CtuWeight>& frame_weights,
                              FrameReport* report) {
  if (!(target > 0.0)) throw ArgumentError("target ratio must be positive");
  const double baseline = SimulateBaselineMs(sim, frame_weights);
  EncoderSimulator simulator(sim, frame_weights);
  ControllerConfig config;
  config.model = model;
  config.catalog = catalog;
  config.window_cap = window_cap;
  config.pic_budget_ms = target * baseline;
  FrameReport local = RunFrame(config, simulator.Weights(), simulator);
  RunSummary summary = Summarize(local, baseline);
  summary.fastest_preset_share = local.PresetShare(catalog.fastest().id);
  if (report != nullptr) *report = std::move(local);
  return summary;
}

std::vector<SweepRow> CmdSweep(const SweepOptions& options) {
  if (options.targets.empty()) throw ArgumentError("sweep needs at least one target");
  for (double t : options.targets) {
    if (!(t > 0.0 && t <= 1.0)) {
      throw ArgumentError("sweep targets must lie in (0, 1], got " +
                          csv::FormatDouble(t));
    }
  }
  if (options.repeats < 1) throw ArgumentError("sweep needs repeats >= 1");
  options.sim.Validate();

  const size_t n_targets = options.targets.size();
  const size_t n_jobs = n_targets * static_cast<size_t>(options.repeats);
  std::vector<RunSummary> results(n_jobs);
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t job = next++; job < n_jobs; job = next++) {
      const size_t t = job / static_cast<size_t>(options.repeats);
      const size_t r = job % static_cast<size_t>(options.repeats);
      SimParams sim = options.sim;
      // Repeats share seeds across targets so rows compare like for like.
      sim.seed = DeriveSeed(options.sim.seed, kSweepStream, r);
      results[job] = RunSimulatedTarget(options.model, options.catalog, sim,
                                        options.targets[t], options.window_cap,
                                        options.frame_weights);
    }
  };
  const int threads = std::max(1, std::min<int>(options.threads,
                                                static_cast<int>(n_jobs)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<SweepRow> rows;
  for (size_t t = 0; t < n_targets; ++t) {
    SweepRow row;
    row.target_ratio = options.targets[t];
    row.runs = options.repeats;
    for (int r = 0; r < options.repeats; ++r) {
      const RunSummary& s = results[t * static_cast<size_t>(options.repeats) + r];
      row.mean_ts_pct += s.ts_pct.value_or(0.0);
      row.mean_te_pct += s.te_pct;
      row.max_te_pct = std::max(row.max_te_pct, s.te_pct);
      row.saturated_runs += s.saturated ? 1 : 0;
    }
    row.mean_ts_pct /= options.repeats;
    row.mean_te_pct /= options.repeats;
    rows.push_back(row);
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << csv::FormatFixed(r.target_ratio, 4) << ',' << r.runs << ','
        << csv::FormatFixed(r.mean_ts_pct, 6) << ','
        << csv::FormatFixed(r.mean_te_pct, 6) << ','
        << csv::FormatFixed(r.max_te_pct, 6) << ',' << r.saturated_runs << '\n';
  }
}

std::vector<SweepRow> ReadSweepCsv(std::istream& in,
                                   const std::string& source_name) {
  csv::Reader reader(in, source_name, kSweepHeader);
  std::vector<SweepRow> rows;
  csv::Row row;
  while (reader.Next(row)) {
    const std::string where = reader.Where(row.line);
    SweepRow r;
    r.target_ratio = csv::ParseDouble(row.fields[0], where);
    r.runs = static_cast<int>(csv::ParseInt(row.fields[1], where));
    r.mean_ts_pct = csv::ParseDouble(row.fields[2], where);
    r.mean_te_pct = csv::ParseDouble(row.fields[3], where);
    r.max_te_pct = csv::ParseDouble(row.fields[4], where);
    r.saturated_runs = static_cast<int>(csv::ParseInt(row.fields[5], where));
    rows.push_back(r);
  }
  return rows;
}

double MeanTePct(const std::vector<SweepRow>& rows) {
  if (rows.empty()) return 0.0;
  double sum = 0.0;
  for (const SweepRow& r : rows) sum += r.mean_te_pct;
  return sum / static_cast<double>(rows.size());
}

}  // namespace tcctl
