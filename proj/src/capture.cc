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

#include "synids/capture.h"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace synids {
namespace {

constexpr std::uint32_t kLinkTypeEthernet = 1;
constexpr std::uint16_t kEtherTypeIpv4 = 0x0800;
constexpr std::size_t kEthernetHeader = 14;
constexpr std::size_t kIpv4Header = 20;
constexpr std::size_t kTcpHeader = 20;
constexpr std::size_t kTcpTimestampOption = 12;  // NOP NOP kind len tsval tsecr
constexpr std::size_t kUdpHeader = 8;
constexpr std::size_t kIcmpHeader = 8;

std::uint32_t LoadLe32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
         (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
}

std::uint32_t LoadBe32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
         (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

std::uint16_t LoadBe16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

class ByteWriter {
 public:
  void U8(std::uint8_t v) { bytes_.push_back(v); }
  void Be16(std::uint16_t v) {
    U8(static_cast<std::uint8_t>(v >> 8));
    U8(static_cast<std::uint8_t>(v));
  }
  void Be32(std::uint32_t v) {
    Be16(static_cast<std::uint16_t>(v >> 16));
    Be16(static_cast<std::uint16_t>(v));
  }
  void Le16(std::uint16_t v) {
    U8(static_cast<std::uint8_t>(v));
    U8(static_cast<std::uint8_t>(v >> 8));
  }
  void Le32(std::uint32_t v) {
    Le16(static_cast<std::uint16_t>(v));
    Le16(static_cast<std::uint16_t>(v >> 16));
  }
  std::size_t size() const { return bytes_.size(); }
  std::uint8_t& at(std::size_t i) { return bytes_[i]; }
  std::vector<std::uint8_t>& bytes() { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
};

std::uint16_t Ipv4Checksum(const std::uint8_t* header, std::size_t len) {
  std::uint32_t sum = 0;
  for (std::size_t i = 0; i + 1 < len; i += 2) sum += LoadBe16(header + i);
  while (sum >> 16) sum = (sum & 0xFFFF) + (sum >> 16);
  return static_cast<std::uint16_t>(~sum);
}

std::size_t L4HeaderLength(const PacketMeta& p) {
  switch (p.protocol) {
    case ipproto::kTcp:
      return kTcpHeader + (p.tcp_tsval != 0 ? kTcpTimestampOption : 0);
    case ipproto::kUdp:
      return kUdpHeader;
    default:
      return kIcmpHeader;
  }
}

// Scans TCP options for a timestamp (kind 8). Returns 0 when absent.
std::uint32_t FindTsval(const std::uint8_t* opt, std::size_t len) {
  std::size_t i = 0;
  while (i < len) {
    const std::uint8_t kind = opt[i];
    if (kind == 0) break;
    if (kind == 1) {
      ++i;
      continue;
    }
    if (i + 1 >= len) break;
    const std::uint8_t olen = opt[i + 1];
    if (olen < 2 || i + olen > len) break;
    if (kind == 8 && olen == 10) return LoadBe32(opt + i + 2);
    i += olen;
  }
  return 0;
}

// Decodes one Ethernet frame. Returns false for anything unsupported.
bool DecodeFrame(const std::uint8_t* data, std::size_t caplen,
                 std::uint32_t orig_len, PacketMeta& out) {
  if (caplen < kEthernetHeader + kIpv4Header) return false;
  if (LoadBe16(data + 12) != kEtherTypeIpv4) return false;
  const std::uint8_t* ip = data + kEthernetHeader;
  const std::size_t ip_avail = caplen - kEthernetHeader;
  if ((ip[0] >> 4) != 4) return false;
  const std::size_t ihl = static_cast<std::size_t>(ip[0] & 0x0F) * 4;
  if (ihl < kIpv4Header || ihl > ip_avail) return false;
  const std::size_t total_len = LoadBe16(ip + 2);
  const std::uint8_t proto = ip[9];
  const std::uint8_t* l4 = ip + ihl;
  const std::size_t l4_avail = ip_avail - ihl;

  out = PacketMeta{};
  out.protocol = proto;
  out.src_addr = LoadBe32(ip + 12);
  out.dst_addr = LoadBe32(ip + 16);
  out.size_bytes = static_cast<std::uint16_t>(std::min<std::uint32_t>(
      std::max<std::uint32_t>(orig_len, static_cast<std::uint32_t>(caplen)),
      65535));

  std::size_t l4_header = 0;
  switch (proto) {
    case ipproto::kTcp: {
      if (l4_avail < kTcpHeader) return false;
      out.src_port = LoadBe16(l4);
      out.dst_port = LoadBe16(l4 + 2);
      out.tcp_flags = l4[13];
      l4_header = static_cast<std::size_t>(l4[12] >> 4) * 4;
      if (l4_header < kTcpHeader) return false;
      const std::size_t opt_avail =
          std::min(l4_header, l4_avail) - kTcpHeader;
      out.tcp_tsval = FindTsval(l4 + kTcpHeader, opt_avail);
      break;
    }
    case ipproto::kUdp:
      if (l4_avail < kUdpHeader) return false;
      out.src_port = LoadBe16(l4);
      out.dst_port = LoadBe16(l4 + 2);
      l4_header = kUdpHeader;
      break;
    case ipproto::kIcmp:
      l4_header = kIcmpHeader;
      break;
    default:
      return false;
  }
  const std::size_t headers = ihl + l4_header;
  const std::size_t payload = total_len > headers ? total_len - headers : 0;
  out.payload_len = static_cast<std::uint16_t>(
      std::min<std::size_t>({payload, out.size_bytes, 65535}));
  return true;
}

}  // namespace

Direction InferDirection(const PacketMeta& p, const CaptureOptions& options) {
  if (options.local_addr) {
    return p.src_addr == *options.local_addr ? Direction::kOutbound
                                             : Direction::kInbound;
  }
  return p.dst_port <= p.src_port ? Direction::kInbound : Direction::kOutbound;
}

CaptureParseResult ParseCapture(std::span<const std::uint8_t> bytes,
                                const CaptureOptions& options) {
  if (bytes.size() < kPcapGlobalHeaderSize) {
    throw Error(ErrorCode::kMalformedHeader,
                "capture shorter than the 24-byte global header");
  }
  const std::uint32_t magic = LoadLe32(bytes.data());
  bool big_endian;
  if (magic == kPcapMagic) {
    big_endian = false;
  } else if (magic == kPcapMagicSwapped) {
    big_endian = true;
  } else {
    throw Error(ErrorCode::kMalformedHeader, "unrecognized capture magic");
  }
  auto u32 = [big_endian](const std::uint8_t* p) {
    return big_endian ? LoadBe32(p) : LoadLe32(p);
  };
  const std::uint32_t linktype = u32(bytes.data() + 20);

  CaptureParseResult result;
  std::size_t pos = kPcapGlobalHeaderSize;
  std::size_t record_index = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < kPcapRecordHeaderSize) {
      result.error = ErrorCode::kTruncatedRecord;
      result.error_message = "record " + std::to_string(record_index) +
                             ": header cut short";
      break;
    }
    const std::uint8_t* rec = bytes.data() + pos;
    const std::uint32_t ts_sec = u32(rec);
    const std::uint32_t ts_usec = u32(rec + 4);
    const std::uint32_t incl_len = u32(rec + 8);
    const std::uint32_t orig_len = u32(rec + 12);
    pos += kPcapRecordHeaderSize;
    if (incl_len > bytes.size() - pos) {
      result.error = ErrorCode::kTruncatedRecord;
      result.error_message = "record " + std::to_string(record_index) +
                             " claims " + std::to_string(incl_len) +
                             " bytes, " + std::to_string(bytes.size() - pos) +
                             " remain";
      break;
    }
    PacketMeta p;
    if (linktype == kLinkTypeEthernet &&
        DecodeFrame(bytes.data() + pos, incl_len, orig_len, p)) {
      p.timestamp = static_cast<std::int64_t>(ts_sec) * 1000000 + ts_usec;
      p.direction = InferDirection(p, options);
      p.session_id = FlowHash(p);
      result.packets.push_back(p);
    } else {
      ++result.skipped;
    }
    pos += incl_len;
    ++record_index;
  }
  return result;
}

CaptureParseResult ReadCaptureFile(const std::filesystem::path& path,
                                   const CaptureOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return ParseCapture(bytes, options);
}

std::size_t EncodedHeaderLength(const PacketMeta& p) {
  return kEthernetHeader + kIpv4Header + L4HeaderLength(p);
}

std::vector<std::uint8_t> EncodeCapture(std::span<const PacketMeta> packets) {
  ByteWriter w;
  w.Le32(kPcapMagic);
  w.Le16(2);  // version 2.4
  w.Le16(4);
  w.Le32(0);  // thiszone
  w.Le32(0);  // sigfigs
  w.Le32(65535);
  w.Le32(kLinkTypeEthernet);

  for (const PacketMeta& p : packets) {
    const std::size_t l4_len = L4HeaderLength(p);
    const std::uint32_t incl =
        static_cast<std::uint32_t>(kEthernetHeader + kIpv4Header + l4_len);
    const std::int64_t sec = p.timestamp / 1000000;
    const std::int64_t usec = p.timestamp % 1000000;
    w.Le32(static_cast<std::uint32_t>(sec));
    w.Le32(static_cast<std::uint32_t>(usec));
    w.Le32(incl);
    w.Le32(std::max<std::uint32_t>(p.size_bytes, incl));

    // Ethernet: fixed locally administered MACs.
    for (std::uint8_t b : {0x02, 0x00, 0x00, 0x00, 0x00, 0x02}) w.U8(b);
    for (std::uint8_t b : {0x02, 0x00, 0x00, 0x00, 0x00, 0x01}) w.U8(b);
    w.Be16(kEtherTypeIpv4);

    const std::size_t ip_start = w.size();
    const std::size_t total_len = std::min<std::size_t>(
        kIpv4Header + l4_len + p.payload_len, 65535);
    w.U8(0x45);
    w.U8(0);
    w.Be16(static_cast<std::uint16_t>(total_len));
    w.Be16(0);       // identification
    w.Be16(0x4000);  // don't fragment
    w.U8(64);
    w.U8(p.protocol);
    w.Be16(0);
    w.Be32(p.src_addr);
    w.Be32(p.dst_addr);
    const std::uint16_t csum = Ipv4Checksum(&w.at(ip_start), kIpv4Header);
    w.at(ip_start + 10) = static_cast<std::uint8_t>(csum >> 8);
    w.at(ip_start + 11) = static_cast<std::uint8_t>(csum);

    switch (p.protocol) {
      case ipproto::kTcp:
        w.Be16(p.src_port);
        w.Be16(p.dst_port);
        w.Be32(0);  // seq
        w.Be32(0);  // ack
        w.U8(static_cast<std::uint8_t>((l4_len / 4) << 4));
        w.U8(p.tcp_flags);
        w.Be16(65535);
        w.Be16(0);
        w.Be16(0);
        if (p.tcp_tsval != 0) {
          w.U8(1);
          w.U8(1);
          w.U8(8);
          w.U8(10);
          w.Be32(p.tcp_tsval);
          w.Be32(0);
        }
        break;
      case ipproto::kUdp:
        w.Be16(p.src_port);
        w.Be16(p.dst_port);
        w.Be16(static_cast<std::uint16_t>(
            std::min<std::size_t>(kUdpHeader + p.payload_len, 65535)));
        w.Be16(0);
        break;
      default:
        w.U8(8);  // echo request
        w.U8(0);
        w.Be16(0);
        w.Be32(0);
        break;
    }
  }
  return std::move(w.bytes());
}

void WriteCapture(std::span<const PacketMeta> packets, std::ostream& out) {
  const std::vector<std::uint8_t> bytes = EncodeCapture(packets);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kFileError, "capture write failed");
}

}  // namespace synids
