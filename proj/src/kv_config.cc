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

#include "synids/kv_config.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "synids/error.h"

namespace synids {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view key, std::string_view text) {
  const std::string s(Trim(text));
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument,
              "config key " + std::string(key) + ": not a number: " + s);
}

}  // namespace

KvConfig KvConfig::Parse(std::string_view text) {
  KvConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) +
                      ": expected key = value");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    if (key.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config line " + std::to_string(line_no) + ": empty key");
    }
    config.Set(std::string(key), std::string(Trim(line.substr(eq + 1))));
  }
  return config;
}

KvConfig KvConfig::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

bool KvConfig::Has(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

void KvConfig::Set(std::string key, std::string value) {
  entries_[std::move(key)] = std::move(value);
}

std::string KvConfig::GetString(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "missing config key " + std::string(key));
  }
  return it->second;
}

std::string KvConfig::GetString(std::string_view key,
                                std::string fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KvConfig::GetDouble(std::string_view key) const {
  return ParseDouble(key, GetString(key));
}

double KvConfig::GetDouble(std::string_view key, double fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : ParseDouble(key, it->second);
}

std::int64_t KvConfig::GetInt(std::string_view key,
                              std::int64_t fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::int64_t v = 0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "config key " + std::string(key) + ": not an integer: " + s);
  }
  return v;
}

std::uint64_t KvConfig::GetUint(std::string_view key,
                                std::uint64_t fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::uint64_t v = 0;
  const std::string& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "config key " + std::string(key) +
                    ": not an unsigned integer: " + s);
  }
  return v;
}

bool KvConfig::GetBool(std::string_view key, bool fallback) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& s = it->second;
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw Error(ErrorCode::kInvalidArgument,
              "config key " + std::string(key) + ": not a boolean: " + s);
}

std::vector<double> KvConfig::GetDoubleList(std::string_view key) const {
  const std::string s = GetString(key);
  std::vector<double> out;
  std::string_view rest = s;
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(ParseDouble(key, rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::vector<std::string> KvConfig::Children(std::string_view prefix) const {
  std::set<std::string> names;
  const std::string p = std::string(prefix) + ".";
  for (const auto& [key, value] : entries_) {
    if (key.compare(0, p.size(), p) != 0) continue;
    const std::string rest = key.substr(p.size());
    names.insert(rest.substr(0, rest.find('.')));
  }
  return {names.begin(), names.end()};
}

}  // namespace synids
