#pragma once

#include <cstdint>
#include <limits>
#include <optional>

namespace said {

enum class PacketKind : std::uint8_t { Interest, Data, Ack, Trigger };

// Pending-request counts are integers-or-infinity; providers stamp +inf.
constexpr std::int64_t kInfinitePr = std::numeric_limits<std::int64_t>::max();

// Statistics-collection range piggybacked on a Data packet.
struct TriggerInfo {
  std::int64_t start_seg = 0;
  std::int64_t end_seg = 0;
};

// Per-receiver reception statistics returned in an Ack.
struct StatsReport {
  std::int64_t receive_pkt_count = 0;
  std::int64_t mark_pkt_count = 0;
  std::int64_t last_receive_id = -1;
  std::int64_t range_start = 0;
};

struct Packet {
  PacketKind kind = PacketKind::Data;
  int flow = -1;
  std::int64_t segment = -1;  // -1 on ANP interests
  std::int64_t size_bits = 0;
  std::uint64_t uid = 0;

  // Interest fields
  bool anp = false;
  std::int64_t pr_delta = 1;      // ANP demand carried upstream
  bool acker_subscribe = false;   // install all-packets forwarding toward this face
  bool acker_unsubscribe = false;
  std::uint64_t nonce = 0;

  // Data fields
  std::int64_t mpr = kInfinitePr;
  bool rem_mark = false;
  bool specific_reply = false;  // answers a sequence-specific interest only
  bool credited = false;        // last hop consumed an ANP pending request
  bool from_cache = false;
  bool from_peer = false;
  bool request_feedback = false;  // every receiver acks (initial ACKer election)
  int acker_id = -1;
  int acker_id_next = -1;  // transition tag while the ACKer role moves
  std::uint64_t checksum = 0;
  std::optional<TriggerInfo> trigger;

  // Ack fields
  int from_receiver = -1;
  bool ack_marked = false;
  std::optional<StatsReport> stats;
};

// Synthetic payload digest; repair copies must match the original.
std::uint64_t payload_checksum(int flow, std::int64_t segment);

constexpr std::int64_t kControlBits = 400;  // interests, acks
constexpr std::int64_t kRefreshBits = 0;    // upstream PR refresh, bandwidth-free

inline std::uint64_t payload_checksum_impl(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

inline std::uint64_t payload_checksum(int flow, std::int64_t segment) {
  return payload_checksum_impl((static_cast<std::uint64_t>(flow) << 40) ^
                               static_cast<std::uint64_t>(segment) ^ 0x5a1d5a1d5ull);
}

}  // namespace said
