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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tcctl/controller.h"
#include "tcctl/encoder_sim.h"
#include "tcctl/frame_model.h"
#include "tcctl/preset_catalog.h"
#include "tcctl/tc_model.h"

namespace tcctl {
namespace {

FramePlane NoiseFrame(int width, int height) {
  FramePlane plane(width, height);
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> dist(0, 255);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) plane.at(x, y) = static_cast<uint8_t>(dist(rng));
  }
  return plane;
}

void BM_Sa8dBlock(benchmark::State& state) {
  Block8x8 block;
  std::mt19937 rng(2);
  std::uniform_int_distribution<int32_t> dist(0, 255);
  for (auto& v : block) v = dist(rng);
  for (auto _ : state) benchmark::DoNotOptimize(Sa8dBlock(block));
}
BENCHMARK(BM_Sa8dBlock);

void BM_FrameWeights1080p(benchmark::State& state) {
  const FramePlane plane = NoiseFrame(1920, 1080);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeFrameWeights(plane));
}
BENCHMARK(BM_FrameWeights1080p)->Unit(benchmark::kMillisecond);

void BM_RunFrame510(benchmark::State& state) {
  SimParams sim;
  sim.ctu_count = 510;
  ControllerConfig config;
  config.model = TcModel{sim.alpha_true, sim.beta_true, 1.0};
  config.pic_budget_ms = 0.6 * SimulateBaselineMs(sim);
  for (auto _ : state) {
    EncoderSimulator simulator(sim);
    benchmark::DoNotOptimize(RunFrame(config, simulator.Weights(), simulator));
  }
}
BENCHMARK(BM_RunFrame510)->Unit(benchmark::kMicrosecond);

void BM_FitModel500(benchmark::State& state) {
  SimParams sim;
  sim.ctu_count = 500;
  sim.noise_sigma = 0.1;
  std::vector<FitSample> samples;
  for (const auto& r : GenerateTrace(sim, PresetCatalog::Default(), 1)) {
    samples.push_back(MakeFitSample(r.planar_cost, r.luma_time_ms));
  }
  for (auto _ : state) benchmark::DoNotOptimize(FitModel(samples));
}
BENCHMARK(BM_FitModel500)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace tcctl

BENCHMARK_MAIN();
