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
// Frontier presets: QTMT maximum-depth caps with their average time saving.
// The controller maps a CTU's target time ratio onto the nearest preset.

#ifndef TCCTL_PRESET_CATALOG_H_
#define TCCTL_PRESET_CATALOG_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tcctl {

struct Preset {
  int id = 0;
  // Maximum depths; nullopt means unconstrained (the default encoder).
  std::optional<int> qt_max;
  std::optional<int> bt_max;
  std::optional<int> mt_max;
  double bdbr_pct = 0.0;  // metadata only
  double ts_pct = 0.0;    // average time saving versus preset 0

  // Expected fraction of the unconstrained time, 1 - ts/100.
  double time_ratio() const { return 1.0 - ts_pct / 100.0; }

  // "4/3/2" or "-/-/-" for log output.
  std::string DepthLabel() const;

  friend bool operator==(const Preset&, const Preset&) = default;
};

// Nearest preset to `r_ctu` by |time_ratio - clamp(r_ctu, 0, 1)|, ties going
// to the lower id. Throws ConfigurationError on an empty list and
// ArgumentError on a non-finite ratio.
const Preset& SelectPreset(std::span<const Preset> presets, double r_ctu);

class PresetCatalog {
 public:
  // The six-preset frontier shipped with the tool.
  static PresetCatalog Default();

  // Throws ConfigurationError unless ids run 0..n-1, preset 0 has zero time
  // saving, and time ratios strictly decrease with id.
  explicit PresetCatalog(std::vector<Preset> presets);

  std::span<const Preset> presets() const { return presets_; }
  size_t size() const { return presets_.size(); }
  const Preset& operator[](size_t id) const { return presets_[id]; }
  const Preset& at(int id) const;

  const Preset& Select(double r_ctu) const { return SelectPreset(presets_, r_ctu); }
  const Preset& fastest() const { return presets_.back(); }
  // Smallest achievable time ratio.
  double floor_ratio() const { return fastest().time_ratio(); }

 private:
  std::vector<Preset> presets_;
};

// Catalog CSV: id,qt,bt,mt,bdbr_pct,ts_pct  (depths blank when unconstrained).
inline constexpr const char* kCatalogCsvHeader = "id,qt,bt,mt,bdbr_pct,ts_pct";

void WriteCatalogCsv(std::ostream& out, const PresetCatalog& catalog);
PresetCatalog ReadCatalogCsv(std::istream& in, const std::string& source_name);
PresetCatalog LoadCatalog(const std::string& path);

}  // namespace tcctl

#endif  // TCCTL_PRESET_CATALOG_H_
