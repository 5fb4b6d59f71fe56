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

#include "synids/synth.h"

#include <arpa/inet.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "synids/capture.h"
#include "synids/error.h"
#include "synids/file_io.h"
#include "synids/jsonl.h"
#include "synids/rng.h"

namespace synids {
namespace {

constexpr std::uint16_t kEphemeralLow = 32768;
constexpr std::uint16_t kEphemeralCount = 28232;  // 32768..60999
constexpr std::uint16_t kMaxPayload = 1460;
constexpr int kAttackSessionPackets = 7;

std::int64_t Micros(double seconds) {
  return static_cast<std::int64_t>(std::llround(seconds * 1e6));
}

// One TCP conversation between a client endpoint and the server.
class SessionBuilder {
 public:
  SessionBuilder(std::uint32_t client, std::uint16_t client_port,
                 std::uint32_t server, std::uint16_t server_port, Rng& rng)
      : client_(client),
        client_port_(client_port),
        server_(server),
        server_port_(server_port),
        client_ts_(static_cast<std::uint32_t>(rng.UniformInt(0xFFFFFFFEu)) + 1),
        server_ts_(static_cast<std::uint32_t>(rng.UniformInt(0xFFFFFFFEu)) + 1) {}

  PacketMeta Make(std::int64_t t, bool from_client, std::uint8_t flags,
                  std::uint16_t payload) {
    PacketMeta p;
    p.timestamp = t;
    p.protocol = ipproto::kTcp;
    p.tcp_flags = flags;
    p.direction = from_client ? Direction::kInbound : Direction::kOutbound;
    p.src_addr = from_client ? client_ : server_;
    p.dst_addr = from_client ? server_ : client_;
    p.src_port = from_client ? client_port_ : server_port_;
    p.dst_port = from_client ? server_port_ : client_port_;
    // 1 kHz timestamp clock on both ends; never zero.
    const std::uint32_t base = from_client ? client_ts_ : server_ts_;
    const std::uint32_t elapsed_ms =
        static_cast<std::uint32_t>((t - (first_ < 0 ? t : first_)) / 1000);
    if (first_ < 0) first_ = t;
    p.tcp_tsval = base + elapsed_ms;
    if (p.tcp_tsval == 0) p.tcp_tsval = 1;
    p.payload_len = payload;
    p.size_bytes = static_cast<std::uint16_t>(EncodedHeaderLength(p) + payload);
    p.session_id = FlowHash(p);
    return p;
  }

 private:
  std::uint32_t client_;
  std::uint16_t client_port_;
  std::uint32_t server_;
  std::uint16_t server_port_;
  std::uint32_t client_ts_;
  std::uint32_t server_ts_;
  std::int64_t first_ = -1;
};

std::uint16_t DrawPayload(Rng& rng, double mu, double sigma) {
  const double v = std::round(rng.LogNormal(mu, sigma));
  return static_cast<std::uint16_t>(std::clamp(v, 1.0, double{kMaxPayload}));
}

std::uint16_t EphemeralPort(Rng& rng) {
  return static_cast<std::uint16_t>(kEphemeralLow +
                                    rng.UniformInt(kEphemeralCount));
}

void GenerateBackground(const ScenarioSpec& spec, const BackgroundProfile& prof,
                        std::vector<PacketMeta>& out) {
  Rng rng(DeriveSeed(spec.seed, "background." + prof.name));
  const std::int64_t t0 = spec.start_time_us;
  const std::int64_t t_end = t0 + Micros(spec.duration_s);
  const double mean_gap_s = 60.0 / prof.sessions_per_min;
  double arrival = rng.Exponential(mean_gap_s);
  while (arrival < spec.duration_s) {
    const std::uint32_t client =
        spec.client_net | static_cast<std::uint32_t>(1 + rng.UniformInt(0xFFFE));
    SessionBuilder s(client, EphemeralPort(rng), spec.server_addr, prof.port, rng);
    std::int64_t t = t0 + Micros(arrival);
    auto emit = [&](bool from_client, std::uint8_t flags, std::uint16_t len) {
      if (t < t_end) out.push_back(s.Make(t, from_client, flags, len));
      t += std::max<std::int64_t>(1, Micros(rng.Exponential(prof.iat_mean_ms / 1000.0)));
    };
    emit(true, tcpflag::kSyn, 0);
    emit(false, tcpflag::kSyn | tcpflag::kAck, 0);
    emit(true, tcpflag::kAck, 0);
    const std::uint64_t data = rng.Geometric(prof.packets_mean);
    for (std::uint64_t i = 0; i < data; ++i) {
      const bool from_server = rng.Uniform() < prof.response_ratio;
      emit(!from_server, tcpflag::kPsh | tcpflag::kAck,
           DrawPayload(rng, prof.size_mu, prof.size_sigma));
    }
    emit(true, tcpflag::kFin | tcpflag::kAck, 0);
    emit(false, tcpflag::kFin | tcpflag::kAck, 0);
    arrival += rng.Exponential(mean_gap_s);
  }
}

void GenerateAttack(const ScenarioSpec& spec, std::vector<PacketMeta>& out) {
  const AttackSpec& a = spec.attack;
  Rng rng(DeriveSeed(spec.seed, "attack"));
  const std::int64_t start = spec.start_time_us + Micros(a.start_s);
  const std::int64_t end = spec.start_time_us + Micros(a.end_s);
  const std::int64_t total = std::llround(a.request_rate_pps * (a.end_s - a.start_s));
  if (total <= 0) return;
  const std::int64_t sessions =
      (total + kAttackSessionPackets - 1) / kAttackSessionPackets;
  const double slot_us = static_cast<double>(end - start) / static_cast<double>(sessions);
  std::int64_t remaining = total;
  for (std::int64_t i = 0; i < sessions; ++i) {
    const std::uint32_t client =
        a.client_net | static_cast<std::uint32_t>(1 + rng.UniformInt(a.client_count));
    SessionBuilder s(client, EphemeralPort(rng), spec.server_addr, a.port, rng);
    std::int64_t t = start + static_cast<std::int64_t>(
                                 (static_cast<double>(i) + rng.Uniform()) * slot_us);
    const std::uint16_t request = DrawPayload(rng, 5.0, 0.2);
    const std::uint16_t response = DrawPayload(rng, 6.0, 0.3);
    struct Step {
      bool from_client;
      std::uint8_t flags;
      std::uint16_t payload;
    };
    const Step steps[kAttackSessionPackets] = {
        {true, tcpflag::kSyn, 0},
        {false, tcpflag::kSyn | tcpflag::kAck, 0},
        {true, tcpflag::kAck, 0},
        {true, tcpflag::kPsh | tcpflag::kAck, request},
        {false, tcpflag::kPsh | tcpflag::kAck, response},
        {true, tcpflag::kFin | tcpflag::kAck, 0},
        {false, tcpflag::kAck, 0}};
    const int n = static_cast<int>(std::min<std::int64_t>(remaining, kAttackSessionPackets));
    for (int k = 0; k < n; ++k) {
      out.push_back(s.Make(std::min(t, end), steps[k].from_client,
                           steps[k].flags, steps[k].payload));
      t += std::max<std::int64_t>(1, Micros(rng.Exponential(0.002)));
    }
    remaining -= n;
  }
}

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidSpec, "invalid scenario: " + what);
}

}  // namespace

std::vector<BackgroundProfile> DefaultBackgroundProfiles() {
  return {
      {"http", 24.0, 80, 10.0, 6.5, 1.0, 40.0, 0.6},
      {"https", 18.0, 443, 14.0, 6.8, 0.9, 35.0, 0.6},
      {"ssh", 2.0, 22, 60.0, 4.5, 0.6, 300.0, 0.5},
      {"bittorrent", 3.0, 6881, 120.0, 7.0, 0.5, 20.0, 0.5},
  };
}

std::uint32_t ParseIpv4(std::string_view text) {
  const std::string s(text);
  in_addr addr{};
  if (inet_pton(AF_INET, s.c_str(), &addr) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "not an IPv4 address: " + s);
  }
  return ntohl(addr.s_addr);
}

std::string FormatIpv4(std::uint32_t a) {
  std::ostringstream out;
  out << (a >> 24) << '.' << ((a >> 16) & 255) << '.' << ((a >> 8) & 255)
      << '.' << (a & 255);
  return out.str();
}

void ValidateScenario(const ScenarioSpec& spec) {
  if (!(spec.duration_s > 0.0)) Invalid("duration_s must be positive");
  for (const BackgroundProfile& p : spec.background) {
    const std::string at = " in profile " + p.name;
    if (!(p.sessions_per_min > 0.0)) Invalid("sessions_per_min must be positive" + at);
    if (!(p.packets_mean >= 1.0)) Invalid("packets_mean must be >= 1" + at);
    if (!(p.iat_mean_ms > 0.0)) Invalid("iat_mean_ms must be positive" + at);
    if (!(p.size_sigma >= 0.0) || !std::isfinite(p.size_mu)) Invalid("bad size distribution" + at);
    if (!(p.response_ratio >= 0.0 && p.response_ratio <= 1.0)) Invalid("response_ratio outside [0,1]" + at);
    if (p.port == 0 || p.port >= kEphemeralLow) Invalid("port must be in 1..32767" + at);
  }
  const AttackSpec& a = spec.attack;
  if (a.enabled) {
    if (!(a.start_s >= 0.0 && a.start_s < a.end_s && a.end_s <= spec.duration_s)) {
      Invalid("attack needs 0 <= start_s < end_s <= duration_s");
    }
    if (!(a.request_rate_pps > 0.0)) Invalid("request_rate_pps must be positive");
    if (a.client_count == 0 || a.client_count > 0xFFFE) Invalid("client_count must be in 1..65534");
    if (a.port == 0 || a.port >= kEphemeralLow) Invalid("attack port must be in 1..32767");
  }
}

ScenarioSpec ScenarioFromConfig(const KvConfig& c) {
  ScenarioSpec s;
  try {
    s.duration_s = c.GetDouble("duration_s", s.duration_s);
    s.seed = c.GetUint("seed", s.seed);
    s.start_time_us = c.GetInt("start_time_us", s.start_time_us);
    if (c.Has("server_addr")) s.server_addr = ParseIpv4(c.GetString("server_addr"));
    if (c.Has("client_net")) s.client_net = ParseIpv4(c.GetString("client_net")) & 0xFFFF0000u;
    const std::vector<std::string> names = c.Children("background");
    if (!names.empty()) s.background.clear();
    for (const std::string& name : names) {
      BackgroundProfile p;
      p.name = name;
      const std::string k = "background." + name + ".";
      p.sessions_per_min = c.GetDouble(k + "sessions_per_min", p.sessions_per_min);
      const std::uint64_t port = c.GetUint(k + "port", p.port);
      if (port > 65535) Invalid("port out of range in profile " + name);
      p.port = static_cast<std::uint16_t>(port);
      p.packets_mean = c.GetDouble(k + "packets_mean", p.packets_mean);
      p.size_mu = c.GetDouble(k + "size_mu", p.size_mu);
      p.size_sigma = c.GetDouble(k + "size_sigma", p.size_sigma);
      p.iat_mean_ms = c.GetDouble(k + "iat_mean_ms", p.iat_mean_ms);
      p.response_ratio = c.GetDouble(k + "response_ratio", p.response_ratio);
      s.background.push_back(std::move(p));
    }
    AttackSpec& a = s.attack;
    a.enabled = c.GetBool("attack.enabled", a.enabled);
    a.start_s = c.GetDouble("attack.start_s", a.start_s);
    a.end_s = c.GetDouble("attack.end_s", a.enabled ? s.duration_s : a.end_s);
    a.request_rate_pps = c.GetDouble("attack.request_rate_pps", a.request_rate_pps);
    const std::uint64_t clients = c.GetUint("attack.client_count", a.client_count);
    if (clients > 0xFFFE) Invalid("client_count must be in 1..65534");
    a.client_count = static_cast<std::uint32_t>(clients);
    if (c.Has("attack.client_net")) {
      a.client_net = ParseIpv4(c.GetString("attack.client_net")) & 0xFFFF0000u;
    }
    const std::uint64_t port = c.GetUint("attack.port", a.port);
    if (port > 65535) Invalid("attack port out of range");
    a.port = static_cast<std::uint16_t>(port);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidSpec) throw;
    Invalid(e.what());
  }
  ValidateScenario(s);
  return s;
}

GeneratedTraffic Generate(const ScenarioSpec& spec) {
  ValidateScenario(spec);
  std::vector<PacketMeta> raw;
  for (const BackgroundProfile& p : spec.background) GenerateBackground(spec, p, raw);
  const std::size_t background_count = raw.size();
  GeneratedTraffic g;
  if (spec.attack.enabled) {
    GenerateAttack(spec, raw);
    g.truth.push_back({spec.start_time_us + Micros(spec.attack.start_s),
                       spec.start_time_us + Micros(spec.attack.end_s)});
  }
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return raw[x].timestamp < raw[y].timestamp;
  });
  g.packets.reserve(raw.size());
  g.attack_mask.reserve(raw.size());
  for (std::size_t i : order) {
    g.packets.push_back(raw[i]);
    g.attack_mask.push_back(i >= background_count ? 1 : 0);
  }
  return g;
}

TrafficFormat ParseTrafficFormat(std::string_view name) {
  if (name == "capture" || name == "pcap") return TrafficFormat::kCapture;
  if (name == "jsonl") return TrafficFormat::kJsonl;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown format '" + std::string(name) + "' (capture|jsonl)");
}

void WriteTraffic(std::span<const PacketMeta> packets,
                  const std::filesystem::path& path, TrafficFormat format) {
  std::ostringstream out;
  if (format == TrafficFormat::kCapture) {
    WriteCapture(packets, out);
  } else {
    WriteMetadataJsonl(packets, out);
  }
  WriteFileAtomic(path, out.str());
}

std::string TruthJson(std::span<const TimeInterval> truth) {
  nlohmann::ordered_json j;
  j["attack_intervals"] = nlohmann::json::array();
  for (const TimeInterval& t : truth) {
    j["attack_intervals"].push_back({{"start_us", t.start}, {"end_us", t.end}});
  }
  return j.dump(2) + "\n";
}

void WriteTruthJson(std::span<const TimeInterval> truth,
                    const std::filesystem::path& path) {
  WriteFileAtomic(path, TruthJson(truth));
}

std::vector<TimeInterval> ReadTruthJson(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = ReadFileBytes(path);
  std::vector<TimeInterval> out;
  try {
    const auto j = nlohmann::json::parse(bytes.begin(), bytes.end());
    for (const auto& item : j.at("attack_intervals")) {
      out.push_back({item.at("start_us").get<std::int64_t>(),
                     item.at("end_us").get<std::int64_t>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError,
                "bad truth file " + path.string() + ": " + e.what());
  }
  return out;
}

}  // namespace synids
