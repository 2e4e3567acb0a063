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

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "tcctl/error.h"

namespace tcctl {
namespace {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteConstantVideo(const fs::path& path, int w, int h, uint8_t value) {
  FramePlane plane(w, h, std::vector<uint8_t>(static_cast<size_t>(w) * h, value));
  std::ofstream out(path, std::ios::binary);
  AppendRawFrame(out, plane);
}

fs::path WriteTraceFile(const fs::path& dir, const SimParams& sim, int frames) {
  const fs::path path = dir / "trace.csv";
  SimulateOptions o;
  o.sim = sim;
  o.frames = frames;
  o.out_path = path.string();
  CmdSimulate(o);
  return path;
}

fs::path WriteModelFile(const fs::path& dir, const TcModel& m) {
  const fs::path path = dir / "model.txt";
  SaveModel(path.string(), m);
  return path;
}

TEST_CASE("TE and TS formulas") {
  CHECK(TimeErrorPct(103, 100) == doctest::Approx(3.0));
  CHECK(TimeErrorPct(97, 100) == doctest::Approx(3.0));
  CHECK(TimeSavingPct(200, 150) == doctest::Approx(25.0));
  CHECK_THROWS_AS(TimeErrorPct(1, 0), ArgumentError);
}

TEST_CASE("analyze") {
  const fs::path dir = oracle::ScratchDir("analyze");
  SUBCASE("constant 128x128 frame") {
    WriteConstantVideo(dir / "c.yuv", 128, 128, 100);
    AnalyzeOptions o{(dir / "c.yuv").string(), 128, 128, 0, 1, (dir / "w.csv").string()};
    const auto rows = CmdAnalyze(o);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) CHECK(r.weight == 409600);
    std::ifstream in(dir / "w.csv");
    CHECK(ReadWeightCsv(in, "w.csv") == rows);
  }
  SUBCASE("zero frame floors every weight") {
    WriteConstantVideo(dir / "z.yuv", 130, 70, 0);
    const auto rows = CmdAnalyze({(dir / "z.yuv").string(), 130, 70, 0, 1, ""});
    CHECK(rows.size() == 6);
    for (const auto& r : rows) CHECK(r.weight == 1);
  }
  SUBCASE("1080p frame") {
    WriteConstantVideo(dir / "hd.yuv", 1920, 1080, 17);
    const auto rows = CmdAnalyze({(dir / "hd.yuv").string(), 1920, 1080, 0, 0, ""});
    CHECK(rows.size() == 510);
  }
  fs::remove_all(dir);
}

TEST_CASE("fit") {
  const fs::path dir = oracle::ScratchDir("fit");
  SUBCASE("noiseless synthetic trace") {
    SimParams sim;
    sim.alpha_true = 0.5;
    sim.beta_true = 0.8;
    sim.noise_sigma = 0.0;
    const auto trace = WriteTraceFile(dir, sim, 2);
    const auto r = CmdFit({trace.string(), 0, (dir / "m.txt").string(), {}});
    CHECK(std::abs(r.model.alpha - 0.5) / 0.5 < 1e-9);
    CHECK(std::abs(r.model.beta - 0.8) / 0.8 < 1e-9);
    const TcModel loaded = LoadModel((dir / "m.txt").string());
    CHECK(loaded == r.model);
  }
  SUBCASE("noisy 500-row trace") {
    SimParams sim;
    sim.noise_sigma = 0.1;
    sim.ctu_count = 500;
    sim.seed = 11;
    const auto trace = WriteTraceFile(dir, sim, 1);
    const auto r = CmdFit({trace.string(), 0, "", {}});
    CHECK(r.sample_count == 500);
    CHECK(r.log_rmse == doctest::Approx(0.1).epsilon(0.15));
    CHECK(std::abs(r.model.alpha - sim.alpha_true) / sim.alpha_true < 0.05);
    CHECK(std::abs(r.model.beta - sim.beta_true) / sim.beta_true < 0.05);
    // Alpha is an extrapolation to cost 1000; inside the data the fit is tight.
    const double typical = std::exp(sim.cost_log_mean);
    const TcModel truth{sim.alpha_true, sim.beta_true, 1.0};
    CHECK(std::abs(Predict(r.model, typical) / Predict(truth, typical) - 1.0) < 0.02);
  }
  SUBCASE("one distinct cost is degenerate") {
    std::ofstream(dir / "flat.csv") << kTraceHeader << "\n0,0,5000,1,0\n0,1,5000,2,0\n";
    CHECK_THROWS_AS(CmdFit({(dir / "flat.csv").string(), 0, "", {}}), DegenerateFitError);
  }
  fs::remove_all(dir);
}

TEST_CASE("control on the simulator") {
  const fs::path dir = oracle::ScratchDir("control");
  SimParams sim;
  sim.seed = 5;
  const auto model = WriteModelFile(dir, {sim.alpha_true, sim.beta_true, 1.0});

  SUBCASE("targets 40/60/80% stay within 4% TE") {
    for (double target : {0.4, 0.6, 0.8}) {
      ControlOptions o;
      o.model_path = model.string();
      o.sim = sim;
      o.budget_ratio = target;
      o.out_dir = (dir / "run").string();
      const ControlResult r = CmdControl(o);
      CAPTURE(target);
      CHECK(r.summary.te_pct <= 4.0);
      CHECK(r.summary.target_ratio == doctest::Approx(target));
      CHECK(r.summary.ctu_count == 240);
    }
    // Artifacts are readable by their own readers.
    std::ifstream log(dir / "run" / "decisions.csv");
    CHECK(ReadDecisionLog(log, "decisions.csv").size() == 240);
    std::ifstream sum(dir / "run" / "summary.csv");
    const auto summaries = ReadSummaryCsv(sum, "summary.csv");
    REQUIRE(summaries.size() == 1);
    CHECK(*summaries[0].target_ratio == doctest::Approx(0.8));
    std::stringstream again;
    WriteSummaryCsv(again, summaries);
    CHECK(again.str() == ReadFile(dir / "run" / "summary.csv"));
  }
  SUBCASE("budget equal to the baseline keeps preset 0 dominant") {
    ControlOptions o;
    o.model_path = model.string();
    o.sim = sim;
    o.budget_ratio = 1.0;
    o.out_dir = dir.string();
    const ControlResult r = CmdControl(o);
    CHECK(r.report.PresetShare(0) > 0.75);
    // Weights track cost, time grows faster than cost, and unspent surplus
    // cannot buy anything slower than preset 0: a small saving remains.
    CHECK(*r.summary.ts_pct > -1.0);
    CHECK(*r.summary.ts_pct < 8.0);
  }
  SUBCASE("20% of baseline saturates") {
    ControlOptions o;
    o.model_path = model.string();
    o.sim = sim;
    o.budget_ratio = 0.2;
    o.out_dir = dir.string();
    CHECK(CmdControl(o).summary.saturated);
  }
  SUBCASE("absolute budget with a supplied baseline") {
    ControlOptions o;
    o.model_path = model.string();
    o.sim = sim;
    o.budget_ms = 300.0;
    o.baseline_ms = 600.0;
    o.out_dir = dir.string();
    const ControlResult r = CmdControl(o);
    CHECK(r.summary.pic_budget_ms == 300.0);
    CHECK(*r.summary.target_ratio == doctest::Approx(0.5));
  }
  SUBCASE("configuration errors") {
    ControlOptions o;
    o.sim = sim;
    o.budget_ratio = 0.5;
    o.out_dir = dir.string();
    CHECK_THROWS_AS(CmdControl(o), ConfigurationError);
    o.model_path = (dir / "nope.txt").string();
    CHECK_THROWS_AS(CmdControl(o), ConfigurationError);
    o.model_path = model.string();
    o.budget_ms = 10.0;
    CHECK_THROWS_AS(CmdControl(o), ConfigurationError);
    o.budget_ms.reset();
    o.trace_path = (dir / "trace.csv").string();
    CHECK_THROWS_AS(CmdControl(o), ConfigurationError);
  }
  fs::remove_all(dir);
}

TEST_CASE("budget equal to the baseline with time-proportional weights") {
  SimParams sim;
  sim.noise_sigma = 0.0;
  EncoderSimulator simulator(sim);
  ControllerConfig config;
  config.model = TcModel{sim.alpha_true, sim.beta_true, 1.0};
  std::vector<CtuWeight> weights;
  for (int i = 0; i < simulator.ctu_count(); ++i) {
    const double t = PredictBase(config.model, simulator.PlanarCost(i));
    weights.push_back({i, std::llround(t * 1e9)});
  }
  const double baseline = SimulateBaselineMs(sim);
  config.pic_budget_ms = baseline;
  const FrameReport r = RunFrame(config, weights, simulator);
  CHECK(r.PresetShare(0) == 1.0);
  CHECK(std::abs(TimeSavingPct(baseline, r.total_real_ms)) < 1e-9);
}

TEST_CASE("control from a video and from a trace") {
  const fs::path dir = oracle::ScratchDir("pipeline");
  // Textured 256x192 frame: 12 CTUs.
  FramePlane plane(256, 192);
  for (int y = 0; y < 192; ++y) {
    for (int x = 0; x < 256; ++x) {
      plane.at(x, y) = static_cast<uint8_t>((x * x + 3 * y * x / 7 + y) % 251);
    }
  }
  {
    std::ofstream out(dir / "clip.yuv", std::ios::binary);
    AppendRawFrame(out, plane);
  }
  const auto model = WriteModelFile(dir, {0.004, 1.2, 1.0});

  SUBCASE("frame-derived simulation") {
    ControlOptions o;
    o.model_path = model.string();
    o.sim.cost_mode = CostMode::kFrameDerived;
    o.input = (dir / "clip.yuv").string();
    o.width = 256;
    o.height = 192;
    o.budget_ratio = 0.6;
    o.out_dir = dir.string();
    const ControlResult r = CmdControl(o);
    CHECK(r.summary.ctu_count == 12);
    CHECK(r.report.log[0].decision.planar_cost ==
          doctest::Approx(0.5 * ComputeFrameWeights(plane)[0].weight + 10000));
  }
  SUBCASE("trace replay with analyzed weights") {
    AnalyzeOptions a{(dir / "clip.yuv").string(), 256, 192, 0, 1,
                     (dir / "weights.csv").string()};
    CmdAnalyze(a);
    SimParams sim;
    sim.ctu_count = 12;
    const auto trace = WriteTraceFile(dir, sim, 1);
    ControlOptions o;
    o.model_path = model.string();
    o.trace_path = trace.string();
    o.weights_path = (dir / "weights.csv").string();
    o.budget_ratio = 0.5;
    o.out_dir = dir.string();
    const ControlResult r = CmdControl(o);
    CHECK(r.summary.ctu_count == 12);
    CHECK(r.summary.baseline_ms.has_value());
  }
  fs::remove_all(dir);
}

TEST_CASE("sweep") {
  SweepOptions o;
  o.model = TcModel{o.sim.alpha_true, o.sim.beta_true, 1.0};
  SUBCASE("single 90% target saves about 10%") {
    o.targets = {0.9};
    o.repeats = 5;
    const auto rows = CmdSweep(o);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean_ts_pct > 7.0);
    CHECK(rows[0].mean_ts_pct < 13.0);
  }
  SUBCASE("byte-identical output for identical seeds, any thread count") {
    o.targets = {0.3, 0.6};
    o.repeats = 3;
    std::stringstream a;
    std::stringstream b;
    WriteSweepCsv(a, CmdSweep(o));
    o.threads = 3;
    WriteSweepCsv(b, CmdSweep(o));
    CHECK(a.str() == b.str());
    std::stringstream back;
    WriteSweepCsv(back, ReadSweepCsv(a, "sweep"));
    CHECK(back.str() == b.str());
  }
  SUBCASE("argument errors") {
    CHECK_THROWS_AS(CmdSweep(o), ArgumentError);
    o.targets = {1.2};
    CHECK_THROWS_AS(CmdSweep(o), ArgumentError);
    o.targets = {0.5};
    o.repeats = 0;
    CHECK_THROWS_AS(CmdSweep(o), ArgumentError);
  }
}

TEST_CASE("exit code mapping") {
  CHECK(ExitCodeFor(ErrorKind::kParse) == kExitParse);
  CHECK(ExitCodeFor(ErrorKind::kConfiguration) == kExitConfiguration);
  CHECK(ExitCodeFor(ErrorKind::kDegenerateFit) == kExitDegenerateFit);
  CHECK(kExitParse != kExitConfiguration);
  CHECK(kExitConfiguration != kExitDegenerateFit);
}

#ifdef TCCTL_CLI_PATH
int RunCli(const std::string& args) {
  const std::string cmd = std::string(TCCTL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_CASE("command-line exit codes") {
  const fs::path dir = oracle::ScratchDir("cli");
  const std::string out = " --out-dir " + dir.string();
  CHECK(RunCli("simulate --frames 2 --seed 3" + out) == kExitOk);
  CHECK(RunCli("fit --input " + (dir / "trace.csv").string() + out) == kExitOk);
  CHECK(RunCli("control --model " + (dir / "model.txt").string() +
               " --budget-ratio 0.5" + out) == kExitOk);
  CHECK(fs::exists(dir / "decisions.csv"));
  CHECK(fs::exists(dir / "running_error.csv"));
  CHECK(RunCli("sweep --model " + (dir / "model.txt").string() +
               " --targets 0.5,0.7 --repeats 2" + out) == kExitOk);
  CHECK(fs::exists(dir / "sweep.csv"));

  std::ofstream(dir / "bad.csv") << "nonsense\n";
  CHECK(RunCli("fit --input " + (dir / "bad.csv").string() + out) == kExitParse);
  std::ofstream(dir / "flat.csv") << kTraceHeader << "\n0,0,5000,1,0\n0,1,5000,2,0\n";
  CHECK(RunCli("fit --input " + (dir / "flat.csv").string() + out) == kExitDegenerateFit);
  CHECK(RunCli("control --model " + (dir / "missing.txt").string() +
               " --budget-ms 5" + out) == kExitConfiguration);
  CHECK(RunCli("control --model x --budget-ms 5 --budget-ratio 0.5") == kExitUsage);
  CHECK(RunCli("") == kExitUsage);
  fs::remove_all(dir);
}
#endif

}  // namespace
}  // namespace tcctl
