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

#include "tcctl/preset_catalog.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "tcctl/csv.h"
#include "tcctl/error.h"

namespace tcctl {
namespace {

std::string DepthField(const std::optional<int>& depth) {
  return depth ? std::to_string(*depth) : std::string();
}

std::optional<int> ParseDepth(std::string_view field, const std::string& where) {
  if (csv::Trim(field).empty()) return std::nullopt;
  const int64_t v = csv::ParseInt(field, where);
  if (v < 0) throw ParseError(where + ": negative depth");
  return static_cast<int>(v);
}

}  // namespace

std::string Preset::DepthLabel() const {
  const auto part = [](const std::optional<int>& d) {
    return d ? std::to_string(*d) : std::string("-");
  };
  return part(qt_max) + "/" + part(bt_max) + "/" + part(mt_max);
}

const Preset& SelectPreset(std::span<const Preset> presets, double r_ctu) {
  if (presets.empty()) throw ConfigurationError("preset catalog is empty");
  if (!std::isfinite(r_ctu)) {
    throw ArgumentError("target time ratio must be finite");
  }
  const double target = std::clamp(r_ctu, 0.0, 1.0);
  const Preset* best = &presets.front();
  double best_distance = std::abs(best->time_ratio() - target);
  for (const Preset& p : presets.subspan(1)) {
    const double d = std::abs(p.time_ratio() - target);
    // Strict comparison keeps the lower id on ties.
    if (d < best_distance) {
      best = &p;
      best_distance = d;
    }
  }
  return *best;
}

PresetCatalog PresetCatalog::Default() {
  return PresetCatalog({
      {0, std::nullopt, std::nullopt, std::nullopt, 0.00, 0.0},
      {1, 4, 4, 3, 0.03, 1.2},
      {2, 4, 3, 3, 0.33, 9.2},
      {3, 4, 3, 2, 1.52, 46.3},
      {4, 4, 2, 1, 3.70, 63.4},
      {5, 4, 0, 0, 9.02, 72.9},
  });
}

PresetCatalog::PresetCatalog(std::vector<Preset> presets)
    : presets_(std::move(presets)) {
  if (presets_.empty()) throw ConfigurationError("preset catalog is empty");
  for (size_t i = 0; i < presets_.size(); ++i) {
    const Preset& p = presets_[i];
    if (p.id != static_cast<int>(i)) {
      throw ConfigurationError("preset ids must run 0..n-1 in order; found " +
                               std::to_string(p.id) + " at position " +
                               std::to_string(i));
    }
    if (!std::isfinite(p.ts_pct) || p.ts_pct >= 100.0) {
      throw ConfigurationError("preset " + std::to_string(p.id) +
                               " time saving must be below 100%");
    }
    if (i > 0 && !(p.time_ratio() < presets_[i - 1].time_ratio())) {
      throw ConfigurationError("preset " + std::to_string(p.id) +
                               " is not faster than preset " +
                               std::to_string(p.id - 1));
    }
  }
  if (presets_.front().ts_pct != 0.0) {
    throw ConfigurationError("preset 0 must have zero time saving");
  }
}

const Preset& PresetCatalog::at(int id) const {
  if (id < 0 || static_cast<size_t>(id) >= presets_.size()) {
    throw RangeError("no preset with id " + std::to_string(id));
  }
  return presets_[static_cast<size_t>(id)];
}

void WriteCatalogCsv(std::ostream& out, const PresetCatalog& catalog) {
  out << kCatalogCsvHeader << '\n';
  for (const Preset& p : catalog.presets()) {
    out << p.id << ',' << DepthField(p.qt_max) << ',' << DepthField(p.bt_max)
        << ',' << DepthField(p.mt_max) << ',' << csv::FormatDouble(p.bdbr_pct)
        << ',' << csv::FormatDouble(p.ts_pct) << '\n';
  }
}

PresetCatalog ReadCatalogCsv(std::istream& in, const std::string& source_name) {
  csv::Reader reader(in, source_name, kCatalogCsvHeader);
  std::vector<Preset> presets;
  csv::Row row;
  while (reader.Next(row)) {
    const std::string where = reader.Where(row.line);
    Preset p;
    p.id = static_cast<int>(csv::ParseInt(row.fields[0], where));
    p.qt_max = ParseDepth(row.fields[1], where);
    p.bt_max = ParseDepth(row.fields[2], where);
    p.mt_max = ParseDepth(row.fields[3], where);
    p.bdbr_pct = csv::ParseDouble(row.fields[4], where);
    p.ts_pct = csv::ParseDouble(row.fields[5], where);
    presets.push_back(p);
  }
  return PresetCatalog(std::move(presets));
}

PresetCatalog LoadCatalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open catalog '" + path + "'");
  return ReadCatalogCsv(in, path);
}

}  // namespace tcctl
