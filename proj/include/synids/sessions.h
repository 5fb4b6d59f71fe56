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

#ifndef SYNIDS_SESSIONS_H_
#define SYNIDS_SESSIONS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "synids/packet.h"

namespace synids {

inline constexpr std::int64_t kDefaultIdleTimeoutUs = 60'000'000;

// Groups packets into bidirectional 5-tuple sessions. A flow is split when
// consecutive packets are more than `idle_timeout_us` apart; the first piece
// keeps FlowHash() as its id and later pieces get a derived id. Packets in
// the output carry their session's id. Sessions are ordered by first_seen,
// then session_id.
std::vector<Session> GroupSessions(
    std::span<const PacketMeta> packets,
    std::int64_t idle_timeout_us = kDefaultIdleTimeoutUs);

}  // namespace synids

#endif  // SYNIDS_SESSIONS_H_
