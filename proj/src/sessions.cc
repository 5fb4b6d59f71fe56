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

#include "synids/sessions.h"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "synids/rng.h"

namespace synids {

std::vector<Session> GroupSessions(std::span<const PacketMeta> packets,
                                   std::int64_t idle_timeout_us) {
  std::vector<std::size_t> order(packets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return packets[a].timestamp < packets[b].timestamp;
                   });

  struct Open {
    std::size_t session_index;
    std::uint64_t splits;
  };
  std::unordered_map<std::uint64_t, Open> open;
  std::vector<Session> sessions;

  for (std::size_t idx : order) {
    const PacketMeta& p = packets[idx];
    const std::uint64_t flow = FlowHash(p);
    auto it = open.find(flow);
    if (it != open.end()) {
      Session& s = sessions[it->second.session_index];
      if (p.timestamp - s.last_seen <= idle_timeout_us) {
        s.packets.push_back(p);
        s.packets.back().session_id = s.session_id;
        s.last_seen = p.timestamp;
        continue;
      }
      ++it->second.splits;
    }
    const std::uint64_t splits = it != open.end() ? it->second.splits : 0;
    Session s;
    s.session_id = splits == 0 ? flow : SplitMix64(flow ^ splits);
    s.first_seen = s.last_seen = p.timestamp;
    s.packets.push_back(p);
    s.packets.back().session_id = s.session_id;
    open[flow] = Open{sessions.size(), splits};
    sessions.push_back(std::move(s));
  }

  // Sessions were created in first_seen order already; the id tie-break makes
  // the order independent of input order for simultaneous starts.
  std::stable_sort(sessions.begin(), sessions.end(),
                   [](const Session& a, const Session& b) {
                     if (a.first_seen != b.first_seen) {
                       return a.first_seen < b.first_seen;
                     }
                     return a.session_id < b.session_id;
                   });
  return sessions;
}

}  // namespace synids
