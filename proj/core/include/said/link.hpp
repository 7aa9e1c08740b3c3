#pragma once

#include <cstdint>
#include <deque>
#include <functional>

#include "said/engine.hpp"
#include "said/packet.hpp"
#include "said/rng.hpp"
#include "said/time.hpp"

namespace said {

// Random Early Marking thresholds, in packets of instantaneous queue length.
struct RemParams {
  double min_th = 50.0 / 3.0;
  double max_th = 50.0;
  double max_p = 0.1;
};

// Mark probability for instantaneous queue length q.
double rem_mark_probability(std::int64_t q, const RemParams& rem);

struct Disposition {
  bool accepted = false;
  bool marked = false;
};

// One direction of a link: a drop-tail FIFO with a single server, REM
// marking at enqueue, fixed propagation latency after service.
class HalfLink {
 public:
  using DeliverFn = std::function<void(Packet, int in_face)>;

  HalfLink(Engine& eng, std::int64_t bits_per_sec, TimeUs latency_us,
           std::int64_t queue_capacity_pkts, RemParams rem, std::uint64_t rng_seed);

  void set_destination(DeliverFn deliver, int dst_face) {
    deliver_ = std::move(deliver);
    dst_face_ = dst_face;
  }

  // Full queues drop; REM marks only Data packets.
  Disposition enqueue(Packet pkt);

  bool full() const { return static_cast<std::int64_t>(queue_.size()) >= capacity_; }
  std::int64_t queue_len() const { return static_cast<std::int64_t>(queue_.size()); }

  std::int64_t bits_per_sec() const { return bps_; }
  TimeUs latency_us() const { return latency_; }

  // Conservation counters: in == delivered + dropped + queue_len at all times.
  struct Counters {
    std::int64_t in = 0;
    std::int64_t delivered = 0;
    std::int64_t dropped = 0;
    std::int64_t data_pkts_delivered = 0;
    std::int64_t data_bits_delivered = 0;
    std::int64_t marks = 0;
  };
  const Counters& counters() const { return counters_; }

 private:
  void start_service();

  Engine& eng_;
  std::int64_t bps_;
  TimeUs latency_;
  std::int64_t capacity_;
  RemParams rem_;
  Rng rng_;
  std::deque<Packet> queue_;
  bool serving_ = false;
  DeliverFn deliver_;
  int dst_face_ = -1;
  Counters counters_;
};

}  // namespace said
