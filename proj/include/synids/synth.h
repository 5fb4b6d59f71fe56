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

// Seeded synthetic traffic: background sessions drawn per protocol profile
// plus an optional HTTP GET flood, with ground-truth attack intervals.
//
// Scenario config keys (all optional; defaults in parentheses):
//
//   duration_s (60)          seed (1)            start_time_us (1.7e15)
//   server_addr (192.168.1.10)
//   client_net (192.168.0.0)     background clients: client_net | 16 bits
//   background.<name>.sessions_per_min
//   background.<name>.port            server port
//   background.<name>.packets_mean    mean data packets per session
//   background.<name>.size_mu         log-normal payload parameters (bytes)
//   background.<name>.size_sigma
//   background.<name>.iat_mean_ms     mean packet inter-arrival time
//   background.<name>.response_ratio  share of data packets sent by server
//   attack.enabled (false)   attack.start_s   attack.end_s
//   attack.request_rate_pps  attack.client_count (50)
//   attack.client_net (10.66.0.0)  attack.port (80)
//
// Without any background.* keys the four built-in profiles http, https, ssh
// and bittorrent are used; giving any background.* key replaces them.

#ifndef SYNIDS_SYNTH_H_
#define SYNIDS_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synids/frames.h"
#include "synids/kv_config.h"
#include "synids/packet.h"

namespace synids {

struct BackgroundProfile {
  std::string name;
  double sessions_per_min = 10.0;
  std::uint16_t port = 80;
  double packets_mean = 8.0;
  double size_mu = 6.0;
  double size_sigma = 1.0;
  double iat_mean_ms = 50.0;
  double response_ratio = 0.5;
};

// http, https, ssh and bittorrent.
std::vector<BackgroundProfile> DefaultBackgroundProfiles();

struct AttackSpec {
  bool enabled = false;
  double start_s = 0.0;
  double end_s = 0.0;
  double request_rate_pps = 15.90;
  std::uint32_t client_count = 50;
  std::uint32_t client_net = 0x0A420000;  // 10.66.0.0
  std::uint16_t port = 80;
};

struct ScenarioSpec {
  double duration_s = 60.0;
  std::uint64_t seed = 1;
  std::int64_t start_time_us = 1'700'000'000'000'000;
  std::uint32_t server_addr = 0xC0A8010A;  // 192.168.1.10
  std::uint32_t client_net = 0xC0A80000;   // 192.168.0.0
  std::vector<BackgroundProfile> background = DefaultBackgroundProfiles();
  AttackSpec attack;
};

// Throws kInvalidSpec for out-of-range or unparsable values.
ScenarioSpec ScenarioFromConfig(const KvConfig& config);
void ValidateScenario(const ScenarioSpec& spec);

struct GeneratedTraffic {
  std::vector<PacketMeta> packets;  // sorted by timestamp
  std::vector<TimeInterval> truth;  // attack intervals, absolute microseconds
  std::vector<std::uint8_t> attack_mask;  // per packet, 1 for attack traffic
};

// Deterministic given the scenario, including its seed. Attack traffic has
// exactly round(request_rate_pps * (end_s - start_s)) packets in 7-packet
// TCP sessions to attack.port, spread evenly over the interval.
GeneratedTraffic Generate(const ScenarioSpec& spec);

enum class TrafficFormat { kCapture, kJsonl };
TrafficFormat ParseTrafficFormat(std::string_view name);

// Atomic write in either format. Throws kFileError.
void WriteTraffic(std::span<const PacketMeta> packets,
                  const std::filesystem::path& path, TrafficFormat format);

std::string TruthJson(std::span<const TimeInterval> truth);
void WriteTruthJson(std::span<const TimeInterval> truth,
                    const std::filesystem::path& path);
// Throws kFileError or kFormatError.
std::vector<TimeInterval> ReadTruthJson(const std::filesystem::path& path);

std::uint32_t ParseIpv4(std::string_view text);
std::string FormatIpv4(std::uint32_t addr);

}  // namespace synids

#endif  // SYNIDS_SYNTH_H_
