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

#include "tcctl/config_file.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "tcctl/csv.h"
#include "tcctl/error.h"

namespace tcctl {

ConfigFile ConfigFile::Parse(std::istream& in, const std::string& source_name) {
  ConfigFile cfg;
  cfg.source_name_ = source_name;
  std::string section;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = csv::Trim(line);
    if (view.empty() || view.front() == '#' || view.front() == ';') continue;
    const std::string where = source_name + ":" + std::to_string(line_no);
    if (view.front() == '[') {
      if (view.back() != ']') {
        throw ParseError(where + ": unterminated section header");
      }
      section = std::string(csv::Trim(view.substr(1, view.size() - 2)));
      continue;
    }
    const size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(where + ": expected 'key = value'");
    }
    const std::string key(csv::Trim(view.substr(0, eq)));
    if (key.empty()) throw ParseError(where + ": empty key");
    if (cfg.Find(section, key) != nullptr) {
      throw ParseError(where + ": duplicate key '" + key + "'");
    }
    cfg.Set(section, key, std::string(csv::Trim(view.substr(eq + 1))));
  }
  return cfg;
}

ConfigFile ConfigFile::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file '" + path + "'");
  return Parse(in, path);
}

const ConfigFile::Entry* ConfigFile::Find(const std::string& section,
                                          const std::string& key) const {
  for (const Section& s : sections_) {
    if (s.name != section) continue;
    for (const Entry& e : s.entries) {
      if (e.key == key) return &e;
    }
  }
  return nullptr;
}

bool ConfigFile::Has(const std::string& section, const std::string& key) const {
  return Find(section, key) != nullptr;
}

std::optional<std::string> ConfigFile::Get(const std::string& section,
                                           const std::string& key) const {
  if (const Entry* e = Find(section, key)) return e->value;
  return std::nullopt;
}

double ConfigFile::GetDouble(const std::string& section, const std::string& key,
                             double fallback) const {
  const Entry* e = Find(section, key);
  if (e == nullptr) return fallback;
  try {
    return csv::ParseDouble(e->value, source_name_ + " [" + section + "] " + key);
  } catch (const ParseError& err) {
    throw ConfigurationError(err.what());
  }
}

double ConfigFile::RequireDouble(const std::string& section,
                                 const std::string& key) const {
  if (!Has(section, key)) {
    throw ConfigurationError(source_name_ + ": missing key '" + key + "'");
  }
  return GetDouble(section, key, 0.0);
}

long long ConfigFile::GetInt(const std::string& section, const std::string& key,
                             long long fallback) const {
  const Entry* e = Find(section, key);
  if (e == nullptr) return fallback;
  try {
    return csv::ParseInt(e->value, source_name_ + " [" + section + "] " + key);
  } catch (const ParseError& err) {
    throw ConfigurationError(err.what());
  }
}

void ConfigFile::Set(const std::string& section, const std::string& key,
                     std::string value) {
  for (Section& s : sections_) {
    if (s.name != section) continue;
    for (Entry& e : s.entries) {
      if (e.key == key) {
        e.value = std::move(value);
        return;
      }
    }
    s.entries.push_back({key, std::move(value)});
    return;
  }
  sections_.push_back({section, {{key, std::move(value)}}});
}

std::vector<std::string> ConfigFile::Keys(const std::string& section) const {
  std::vector<std::string> keys;
  for (const Section& s : sections_) {
    if (s.name != section) continue;
    for (const Entry& e : s.entries) keys.push_back(e.key);
  }
  return keys;
}

void ConfigFile::Write(std::ostream& out) const {
  bool first = true;
  for (const Section& s : sections_) {
    if (!s.name.empty()) {
      if (!first) out << '\n';
      out << '[' << s.name << "]\n";
    }
    for (const Entry& e : s.entries) out << e.key << " = " << e.value << '\n';
    first = false;
  }
}

}  // namespace tcctl
