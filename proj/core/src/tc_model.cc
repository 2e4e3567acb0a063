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

#include "tcctl/tc_model.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "tcctl/config_file.h"
#include "tcctl/csv.h"
#include "tcctl/error.h"

namespace tcctl {

void ValidateModel(const TcModel& model, const ModelBounds& bounds) {
  if (!(std::isfinite(model.alpha) && model.alpha > 0.0)) {
    throw ConfigurationError("model alpha must be positive, got " +
                             csv::FormatDouble(model.alpha));
  }
  if (!(std::isfinite(model.r_cpu) && model.r_cpu > 0.0)) {
    throw ConfigurationError("model r_cpu must be positive, got " +
                             csv::FormatDouble(model.r_cpu));
  }
  if (!std::isfinite(model.beta) || model.beta < bounds.beta_min ||
      model.beta > bounds.beta_max) {
    throw ConfigurationError("model beta " + csv::FormatDouble(model.beta) +
                             " outside [" + csv::FormatDouble(bounds.beta_min) +
                             ", " + csv::FormatDouble(bounds.beta_max) + "]");
  }
}

FitSample MakeFitSample(double planar_cost, double luma_time_ms) {
  if (!(std::isfinite(planar_cost) && planar_cost > 0.0)) {
    throw ArgumentError("fit sample needs a positive PlanarCost, got " +
                        csv::FormatDouble(planar_cost));
  }
  if (!(std::isfinite(luma_time_ms) && luma_time_ms > 0.0)) {
    throw ArgumentError("fit sample needs a positive time, got " +
                        csv::FormatDouble(luma_time_ms));
  }
  return FitSample{planar_cost, luma_time_ms};
}

double ScaleCost(double planar_cost) {
  if (!(planar_cost > 0.0)) {
    throw ArgumentError("PlanarCost must be positive, got " +
                        csv::FormatDouble(planar_cost));
  }
  return planar_cost / kPlanarCostScale;
}

TcModel FitModel(std::span<const FitSample> samples, const ModelBounds& bounds) {
  bool distinct = false;
  for (const FitSample& s : samples) {
    MakeFitSample(s.planar_cost, s.luma_time_ms);
    distinct = distinct || s.planar_cost != samples.front().planar_cost;
  }
  if (samples.size() < 2 || !distinct) {
    throw DegenerateFitError(
        "fit needs at least two samples with distinct PlanarCost values");
  }

  // Centered sums keep the slope accurate when ln(cost) has a large offset.
  const double n = static_cast<double>(samples.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const FitSample& s : samples) {
    mean_x += std::log(ScaleCost(s.planar_cost));
    mean_y += std::log(s.luma_time_ms);
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const FitSample& s : samples) {
    const double dx = std::log(ScaleCost(s.planar_cost)) - mean_x;
    const double dy = std::log(s.luma_time_ms) - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0)) {
    throw DegenerateFitError("PlanarCost values have zero log-variance");
  }

  TcModel model;
  model.beta = sxy / sxx;
  model.alpha = std::exp(mean_y - model.beta * mean_x);
  model.r_cpu = 1.0;
  if (!std::isfinite(model.beta) || model.beta < bounds.beta_min ||
      model.beta > bounds.beta_max) {
    throw DegenerateFitError("fitted beta " + csv::FormatDouble(model.beta) +
                             " outside sanity bounds [" +
                             csv::FormatDouble(bounds.beta_min) + ", " +
                             csv::FormatDouble(bounds.beta_max) + "]");
  }
  return model;
}

double LogSpaceRmse(const TcModel& model, std::span<const FitSample> samples) {
  if (samples.empty()) return 0.0;
  double sse = 0.0;
  for (const FitSample& s : samples) {
    const double r = std::log(s.luma_time_ms) - std::log(Predict(model, s.planar_cost));
    sse += r * r;
  }
  return std::sqrt(sse / static_cast<double>(samples.size()));
}

double PredictBase(const TcModel& model, double planar_cost) {
  return model.alpha * std::pow(ScaleCost(planar_cost), model.beta);
}

double Predict(const TcModel& model, double planar_cost) {
  return model.r_cpu * PredictBase(model, planar_cost);
}

void CalibrationSums::Add(double predicted_base_ms, double real_ms) {
  predicted_sum_ += predicted_base_ms;
  real_sum_ += real_ms;
  ++count_;
}

double CalibrationSums::Ratio() const {
  if (!(predicted_sum_ > 0.0) || !(real_sum_ > 0.0)) {
    throw CalibrationError("calibration sums must be positive (predicted " +
                           csv::FormatDouble(predicted_sum_) + ", real " +
                           csv::FormatDouble(real_sum_) + ")");
  }
  return real_sum_ / predicted_sum_;
}

TcModel UpdateCalibration(const TcModel& model,
                          std::span<const CalibrationRecord> records) {
  if (records.empty()) return model;
  CalibrationSums sums;
  for (const CalibrationRecord& r : records) sums.Add(r.predicted_base_ms, r.real_ms);
  TcModel out = model;
  out.r_cpu = sums.Ratio();
  return out;
}

void WriteModel(std::ostream& out, const TcModel& model) {
  ConfigFile cfg;
  cfg.Set("", "alpha", csv::FormatDouble(model.alpha));
  cfg.Set("", "beta", csv::FormatDouble(model.beta));
  cfg.Set("", "r_cpu", csv::FormatDouble(model.r_cpu));
  cfg.Write(out);
}

TcModel ReadModel(std::istream& in, const std::string& source_name,
                  const ModelBounds& bounds) {
  const ConfigFile cfg = ConfigFile::Parse(in, source_name);
  TcModel model;
  model.alpha = cfg.RequireDouble("", "alpha");
  model.beta = cfg.RequireDouble("", "beta");
  model.r_cpu = cfg.GetDouble("", "r_cpu", 1.0);
  ValidateModel(model, bounds);
  return model;
}

void SaveModel(const std::string& path, const TcModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file '" + path + "'");
  WriteModel(out, model);
}

TcModel LoadModel(const std::string& path, const ModelBounds& bounds) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open model file '" + path + "'");
  return ReadModel(in, path, bounds);
}

}  // namespace tcctl
