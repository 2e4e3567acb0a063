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
// tcctl: picture-level encoding time control on simulated or replayed
// encoders.
//
//   tcctl analyze  --input clip.yuv --width 1920 --height 1080
//   tcctl simulate --sim-config sim.cfg --frames 10
//   tcctl fit      --input trace.csv
//   tcctl control  --model model.txt --budget-ratio 0.6
//   tcctl sweep    --model model.txt --repeats 20

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tcctl/config_file.h"
#include "tcctl/csv.h"
#include "tcctl/error.h"
#include "tcctl/harness.h"

namespace {

using tcctl::csv::FormatFixed;

struct CommonFlags {
  std::string out_dir = ".";
  std::string sim_config;
  std::optional<long long> seed;
  std::string catalog;
};

tcctl::SimParams ResolveSim(const CommonFlags& flags) {
  tcctl::SimParams sim;
  if (!flags.sim_config.empty()) {
    sim = tcctl::SimParamsFromConfig(tcctl::ConfigFile::Load(flags.sim_config));
  }
  if (flags.seed) {
    if (*flags.seed < 0) throw tcctl::ConfigurationError("--seed must be >= 0");
    sim.seed = static_cast<uint64_t>(*flags.seed);
  }
  sim.Validate();
  return sim;
}

std::string OutPath(const CommonFlags& flags, const char* name) {
  return (std::filesystem::path(flags.out_dir) / name).string();
}

void PrintSummary(const tcctl::RunSummary& s) {
  std::cout << "pic_budget_ms  " << FormatFixed(s.pic_budget_ms, 3) << '\n'
            << "total_real_ms  " << FormatFixed(s.total_real_ms, 3) << '\n'
            << "TE             " << FormatFixed(s.te_pct, 3) << "%\n";
  if (s.ts_pct) {
    std::cout << "TS (luma)      " << FormatFixed(*s.ts_pct, 3) << "%\n"
              << "target_ratio   " << FormatFixed(*s.target_ratio, 4) << '\n';
  }
  std::cout << "saturated      " << (s.saturated ? "yes" : "no") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Picture-level encoding time control for intra coding"};
  app.require_subcommand(1);

  CommonFlags common;
  const auto add_common = [&common](CLI::App* cmd, bool sim, bool catalog) {
    cmd->add_option("--out-dir", common.out_dir, "Directory for output files");
    if (sim) {
      cmd->add_option("--sim-config", common.sim_config,
                      "Simulator parameters ([sim] key = value file)");
      cmd->add_option("--seed", common.seed, "Simulator seed override");
    }
    if (catalog) {
      cmd->add_option("--catalog", common.catalog,
                      "Preset catalog CSV (id,qt,bt,mt,bdbr_pct,ts_pct)");
    }
  };

  // analyze
  tcctl::AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute SA8D CTU weights");
  analyze_cmd->add_option("--input", analyze.input, "Raw 4:2:0 or Y4M video")
      ->required();
  analyze_cmd->add_option("--width", analyze.width, "Luma width (raw input)");
  analyze_cmd->add_option("--height", analyze.height, "Luma height (raw input)");
  analyze_cmd->add_option("--first-frame", analyze.first_frame, "First frame to analyze");
  analyze_cmd->add_option("--frames", analyze.frame_count,
                          "Frames to analyze; 0 for all")
      ->capture_default_str();
  add_common(analyze_cmd, false, false);

  // fit
  tcctl::FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the time-cost model to a trace");
  fit_cmd->add_option("--input", fit.trace_path, "Trace CSV")->required();
  fit_cmd->add_option("--preset", fit.preset_filter, "Preset rows to fit on")
      ->capture_default_str();
  fit_cmd->add_option("--beta-min", fit.bounds.beta_min, "Lower bound on beta")
      ->capture_default_str();
  fit_cmd->add_option("--beta-max", fit.bounds.beta_max, "Upper bound on beta")
      ->capture_default_str();
  add_common(fit_cmd, false, false);

  // simulate
  tcctl::SimulateOptions simulate;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Write a simulated encoder trace");
  simulate_cmd->add_option("--frames", simulate.frames, "Frames to simulate")
      ->capture_default_str();
  simulate_cmd->add_option("--preset", simulate.preset_id, "Preset every CTU is coded with")
      ->capture_default_str();
  add_common(simulate_cmd, true, false);

  // control
  tcctl::ControlOptions control;
  std::string control_weights;
  std::string control_input;
  std::string control_trace;
  std::optional<double> budget_ms;
  std::optional<double> budget_ratio;
  std::optional<double> baseline_ms;
  auto* control_cmd =
      app.add_subcommand("control", "Run the controller over one frame");
  control_cmd->add_option("--model", control.model_path, "Model file")->required();
  control_cmd->add_option("--weights", control_weights, "Weight CSV");
  control_cmd->add_option("--input", control_input, "Video to weight");
  control_cmd->add_option("--width", control.width, "Raw video width");
  control_cmd->add_option("--height", control.height, "Raw video height");
  control_cmd->add_option("--frame", control.frame_index, "Frame index within --input");
  control_cmd->add_option("--trace", control_trace, "Replay this trace CSV");
  control_cmd->add_option("--trace-frame", control.trace_frame, "Frame to replay from --trace");
  auto* budget_opt =
      control_cmd->add_option("--budget-ms", budget_ms, "Picture budget in ms");
  auto* ratio_opt = control_cmd->add_option(
      "--budget-ratio", budget_ratio, "Budget as a fraction of the baseline");
  budget_opt->excludes(ratio_opt);
  control_cmd->add_option("--baseline-ms", baseline_ms,
                          "Unconstrained luma time (default: simulated)");
  control_cmd->add_option("--window", control.window_cap, "Feedback window cap")
      ->capture_default_str();
  add_common(control_cmd, true, true);

  // sweep
  std::string sweep_model;
  std::vector<double> targets = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int repeats = 20;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int sweep_window = tcctl::kDefaultWindowCap;
  std::string sweep_weights;
  auto* sweep_cmd = app.add_subcommand("sweep", "Mean TE/TS over target ratios");
  sweep_cmd->add_option("--model", sweep_model, "Model file")->required();
  sweep_cmd->add_option("--targets", targets, "Target ratios in (0, 1]")
      ->delimiter(',')
      ->capture_default_str();
  sweep_cmd->add_option("--repeats", repeats, "Seeds per target")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "Worker threads");
  sweep_cmd->add_option("--window", sweep_window, "Feedback window cap")
      ->capture_default_str();
  sweep_cmd->add_option("--weights", sweep_weights,
                        "Weight CSV for frame-derived simulation");
  add_common(sweep_cmd, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? tcctl::kExitOk : tcctl::kExitUsage;
  }

  try {
    if (*analyze_cmd) {
      analyze.out_path = OutPath(common, "weights.csv");
      const auto records = tcctl::CmdAnalyze(analyze);
      std::cout << "wrote " << records.size() << " CTU weights to "
                << analyze.out_path << '\n';
    } else if (*fit_cmd) {
      fit.out_path = OutPath(common, "model.txt");
      const tcctl::FitResult r = tcctl::CmdFit(fit);
      std::cout << "alpha     " << tcctl::csv::FormatDouble(r.model.alpha) << '\n'
                << "beta      " << tcctl::csv::FormatDouble(r.model.beta) << '\n'
                << "samples   " << r.sample_count << '\n'
                << "log_rmse  " << FormatFixed(r.log_rmse, 6) << '\n'
                << "wrote " << fit.out_path << '\n';
    } else if (*simulate_cmd) {
      simulate.sim = ResolveSim(common);
      simulate.out_path = OutPath(common, "trace.csv");
      const auto rows = tcctl::CmdSimulate(simulate);
      std::cout << "wrote " << rows.size() << " rows to " << simulate.out_path
                << '\n';
    } else if (*control_cmd) {
      control.sim = ResolveSim(common);
      if (!common.catalog.empty()) control.catalog_path = common.catalog;
      if (!control_weights.empty()) control.weights_path = control_weights;
      if (!control_input.empty()) control.input = control_input;
      if (!control_trace.empty()) control.trace_path = control_trace;
      control.budget_ms = budget_ms;
      control.budget_ratio = budget_ratio;
      control.baseline_ms = baseline_ms;
      control.out_dir = common.out_dir;
      const tcctl::ControlResult r = tcctl::CmdControl(control);
      PrintSummary(r.summary);
      std::cout << "wrote decisions.csv, running_error.csv, summary.csv to "
                << common.out_dir << '\n';
    } else if (*sweep_cmd) {
      tcctl::SweepOptions sweep;
      sweep.model = tcctl::LoadModel(sweep_model);
      if (!common.catalog.empty()) sweep.catalog = tcctl::LoadCatalog(common.catalog);
      sweep.sim = ResolveSim(common);
      sweep.targets = targets;
      sweep.repeats = repeats;
      sweep.threads = threads;
      sweep.window_cap = sweep_window;
      if (!sweep_weights.empty()) {
        std::ifstream in(sweep_weights);
        if (!in) throw tcctl::ConfigurationError("cannot open '" + sweep_weights + "'");
        for (const auto& rec : tcctl::ReadWeightCsv(in, sweep_weights)) {
          if (rec.frame != 0) break;
          sweep.frame_weights.push_back({rec.geom.index, std::max<int64_t>(1, rec.weight)});
        }
      }
      const auto rows = tcctl::CmdSweep(sweep);
      const std::string path = OutPath(common, "sweep.csv");
      std::filesystem::create_directories(common.out_dir);
      std::ofstream out(path, std::ios::binary);
      if (!out) throw tcctl::IoError("cannot write '" + path + "'");
      tcctl::WriteSweepCsv(out, rows);
      tcctl::WriteSweepCsv(std::cout, rows);
      std::cout << "average TE " << FormatFixed(tcctl::MeanTePct(rows), 3)
                << "%\nwrote " << path << '\n';
    }
  } catch (const tcctl::Error& e) {
    std::cerr << "tcctl: " << tcctl::ErrorKindName(e.kind()) << ": " << e.what()
              << '\n';
    return tcctl::ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "tcctl: " << e.what() << '\n';
    return tcctl::kExitFailure;
  }
  return tcctl::kExitOk;
}
