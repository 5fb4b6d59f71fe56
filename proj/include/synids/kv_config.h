// Copyright 2026 The synids Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SYNIDS_KV_CONFIG_H_
#define SYNIDS_KV_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace synids {

// Plain `key = value` text configuration. One entry per line; `#` starts a
// comment; surrounding whitespace is trimmed; later keys override earlier
// ones. Keys are dotted paths such as `basis.a` or `attack.start_s`.
class KvConfig {
 public:
  KvConfig() = default;

  static KvConfig Parse(std::string_view text);
  static KvConfig FromFile(const std::filesystem::path& path);

  bool Has(std::string_view key) const;
  void Set(std::string key, std::string value);

  std::string GetString(std::string_view key) const;
  std::string GetString(std::string_view key, std::string fallback) const;
  double GetDouble(std::string_view key) const;
  double GetDouble(std::string_view key, double fallback) const;
  std::int64_t GetInt(std::string_view key, std::int64_t fallback) const;
  std::uint64_t GetUint(std::string_view key, std::uint64_t fallback) const;
  bool GetBool(std::string_view key, bool fallback) const;
  std::vector<double> GetDoubleList(std::string_view key) const;

  // Distinct second-level names under `prefix.`, e.g. the profile names in
  // `background.http.port`, `background.ssh.port`.
  std::vector<std::string> Children(std::string_view prefix) const;

  const std::map<std::string, std::string, std::less<>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

}  // namespace synids

#endif  // SYNIDS_KV_CONFIG_H_
