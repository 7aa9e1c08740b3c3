#include "said/link.hpp"

namespace said {

double rem_mark_probability(std::int64_t q, const RemParams& rem) {
  const double qd = static_cast<double>(q);
  if (qd < rem.min_th) return 0.0;
  if (qd >= rem.max_th) return 1.0;
  return rem.max_p * (qd - rem.min_th) / (rem.max_th - rem.min_th);
}

HalfLink::HalfLink(Engine& eng, std::int64_t bits_per_sec, TimeUs latency_us,
                   std::int64_t queue_capacity_pkts, RemParams rem, std::uint64_t rng_seed)
    : eng_(eng),
      bps_(bits_per_sec),
      latency_(latency_us),
      capacity_(queue_capacity_pkts),
      rem_(rem),
      rng_(rng_seed) {}

Disposition HalfLink::enqueue(Packet pkt) {
  counters_.in++;
  if (full()) {
    counters_.dropped++;
    return Disposition{false, false};
  }
  bool marked = false;
  if (pkt.kind == PacketKind::Data) {
    const double p = rem_mark_probability(queue_len(), rem_);
    if (p >= 1.0 || (p > 0.0 && rng_.next_double() < p)) {
      pkt.rem_mark = true;
      marked = true;
      counters_.marks++;
    }
  }
  queue_.push_back(std::move(pkt));
  if (!serving_) start_service();
  return Disposition{true, marked};
}

void HalfLink::start_service() {
  serving_ = true;
  const Packet& head = queue_.front();
  const TimeUs done = eng_.now() + service_time_us(head.size_bits, bps_);
  eng_.schedule(done, [this] {
    Packet pkt = std::move(queue_.front());
    queue_.pop_front();
    counters_.delivered++;
    if (pkt.kind == PacketKind::Data) {
      counters_.data_pkts_delivered++;
      counters_.data_bits_delivered += pkt.size_bits;
    }
    eng_.schedule(eng_.now() + latency_, [this, pkt = std::move(pkt)]() mutable {
      if (deliver_) deliver_(std::move(pkt), dst_face_);
    });
    if (!queue_.empty()) {
      start_service();
    } else {
      serving_ = false;
    }
  });
}

}  // namespace said
