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
// Flat `key = value` text files with optional `[section]` headers. Used for
// model files, simulator parameters and other run configuration.

#ifndef TCCTL_CONFIG_FILE_H_
#define TCCTL_CONFIG_FILE_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcctl {

class ConfigFile {
 public:
  // Keys outside any section live in section "".
  static ConfigFile Parse(std::istream& in, const std::string& source_name);
  static ConfigFile Load(const std::string& path);

  bool Has(const std::string& section, const std::string& key) const;
  std::optional<std::string> Get(const std::string& section,
                                 const std::string& key) const;
  // Typed getters throw ConfigurationError on malformed values.
  double GetDouble(const std::string& section, const std::string& key,
                   double fallback) const;
  double RequireDouble(const std::string& section,
                       const std::string& key) const;
  long long GetInt(const std::string& section, const std::string& key,
                   long long fallback) const;

  void Set(const std::string& section, const std::string& key,
           std::string value);
  std::vector<std::string> Keys(const std::string& section) const;

  // Deterministic output: sections and keys in insertion order.
  void Write(std::ostream& out) const;

  const std::string& source_name() const { return source_name_; }

 private:
  struct Entry {
    std::string key;
    std::string value;
  };
  struct Section {
    std::string name;
    std::vector<Entry> entries;
  };

  const Entry* Find(const std::string& section, const std::string& key) const;

  std::string source_name_ = "<memory>";
  std::vector<Section> sections_;
};

}  // namespace tcctl

#endif  // TCCTL_CONFIG_FILE_H_
