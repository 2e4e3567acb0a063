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
// Power-law Time-Cost model: a CTU's original luma compress time is
// predicted as  r_cpu * alpha * (PlanarCost / 1000)^beta.
// alpha and beta are fitted offline by least squares in log-log space;
// r_cpu is an online calibration factor relating the machine that produced
// the fit to the machine currently encoding.

#ifndef TCCTL_TC_MODEL_H_
#define TCCTL_TC_MODEL_H_

#include <iosfwd>
#include <span>
#include <string>

namespace tcctl {

inline constexpr double kPlanarCostScale = 1000.0;

struct TcModel {
  double alpha = 1.0;  // ms per unit scaled cost^beta
  double beta = 1.0;
  double r_cpu = 1.0;

  friend bool operator==(const TcModel&, const TcModel&) = default;
};

// Sanity bounds on the fitted exponent.
struct ModelBounds {
  double beta_min = 0.0;
  double beta_max = 3.0;
};

// Throws ConfigurationError unless alpha > 0, r_cpu > 0 and beta is finite
// and inside `bounds`.
void ValidateModel(const TcModel& model, const ModelBounds& bounds = {});

struct FitSample {
  double planar_cost = 0.0;  // raw, before scaling
  double luma_time_ms = 0.0;
};

// Throws ArgumentError for non-positive or non-finite fields.
FitSample MakeFitSample(double planar_cost, double luma_time_ms);

// planar_cost / 1000. Throws ArgumentError for non-positive cost.
double ScaleCost(double planar_cost);

// Ordinary least squares of ln(time) on ln(scaled cost). r_cpu starts at 1.
// Throws ArgumentError on invalid samples and DegenerateFitError when fewer
// than two distinct costs are present or beta leaves `bounds`.
TcModel FitModel(std::span<const FitSample> samples,
                 const ModelBounds& bounds = {});

// Root mean square residual of the fit in log space.
double LogSpaceRmse(const TcModel& model, std::span<const FitSample> samples);

// Calibrated prediction: r_cpu * alpha * scaled^beta.
double Predict(const TcModel& model, double planar_cost);
// Uncalibrated prediction, r_cpu excluded.
double PredictBase(const TcModel& model, double planar_cost);

struct CalibrationRecord {
  double predicted_base_ms = 0.0;
  double real_ms = 0.0;
};

// Running sums of base predictions and real times over non-accelerated CTUs.
class CalibrationSums {
 public:
  void Add(double predicted_base_ms, double real_ms);
  bool empty() const { return count_ == 0; }
  long long count() const { return count_; }
  double predicted_sum_ms() const { return predicted_sum_; }
  double real_sum_ms() const { return real_sum_; }
  // sum(real) / sum(predicted). Throws CalibrationError on non-positive sums.
  double Ratio() const;

 private:
  long long count_ = 0;
  double predicted_sum_ = 0.0;
  double real_sum_ = 0.0;
};

// Returns `model` with r_cpu = sum(real) / sum(predicted_base) over all of
// `records`, or unchanged when `records` is empty.
TcModel UpdateCalibration(const TcModel& model,
                          std::span<const CalibrationRecord> records);

// Model file: `alpha = ...`, `beta = ...`, `r_cpu = ...` lines.
void WriteModel(std::ostream& out, const TcModel& model);
TcModel ReadModel(std::istream& in, const std::string& source_name,
                  const ModelBounds& bounds = {});
void SaveModel(const std::string& path, const TcModel& model);
TcModel LoadModel(const std::string& path, const ModelBounds& bounds = {});

}  // namespace tcctl

#endif  // TCCTL_TC_MODEL_H_
