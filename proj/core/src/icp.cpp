#include "said/icp.hpp"

#include <algorithm>

namespace said {

IcpReceiver::IcpReceiver(TransportEnv env, IcpOptions opt)
    : env_(env),
      opt_(opt),
      w_(opt.w_init),
      received_(static_cast<std::size_t>(env.flow_size), 0) {
  if (opt.streaming) arrivals_.assign(static_cast<std::size_t>(env.flow_size), kNeverUs);
}

void IcpReceiver::start() { issue(); }

void IcpReceiver::issue() {
  while (static_cast<std::int64_t>(outstanding_.size()) < static_cast<std::int64_t>(w_) &&
         next_to_request_ < env_.flow_size) {
    const std::int64_t seg = next_to_request_++;
    if (seg != highest_requested_ + 1) env_.mon->icp_order_violations++;
    highest_requested_ = seg;
    attempts_[seg] = 1;
    request(seg);
  }
}

void IcpReceiver::request(std::int64_t seg) {
  outstanding_[seg] = env_.eng->now();
  Packet pkt;
  pkt.kind = PacketKind::Interest;
  pkt.flow = env_.flow;
  pkt.segment = seg;
  pkt.size_bits = kControlBits;
  pkt.uid = env_.mon->next_uid();
  pkt.nonce = pkt.uid;
  env_.host->send(0, std::move(pkt));
  arm_rto(seg, attempts_[seg]);
}

void IcpReceiver::arm_rto(std::int64_t seg, int attempt) {
  const TimeUs rto = std::clamp<TimeUs>(2 * srtt_, opt_.rto_min, opt_.rto_max);
  env_.eng->schedule_in(rto << std::min(attempt - 1, 4), [this, seg, attempt] {
    auto it = outstanding_.find(seg);
    if (it == outstanding_.end() || attempts_[seg] != attempt) return;
    timeouts++;
    if (seg > recovery_end_) {
      w_ = std::max(1.0, w_ / 2.0);
      recovery_end_ = highest_requested_;
    }
    attempts_[seg] = attempt + 1;
    request(seg);
  });
}

void IcpReceiver::handle_data(Packet pkt) {
  data_arrivals++;
  if (pkt.from_cache) cache_hit_arrivals++;
  const std::int64_t seg = pkt.segment;
  if (seg < 0 || seg >= env_.flow_size) return;

  auto it = outstanding_.find(seg);
  if (it != outstanding_.end()) {
    const TimeUs sample = env_.eng->now() - it->second;
    srtt_ = srtt_ == 0 ? sample : (7 * srtt_ + sample) / 8;
    outstanding_.erase(it);
    attempts_.erase(seg);
  }

  if (received_[seg]) {
    duplicates++;
  } else {
    received_[seg] = 1;
    received_count_++;
    const auto bin = static_cast<std::size_t>(env_.eng->now() / bin_width_);
    if (bins_.size() <= bin) bins_.resize(bin + 1, 0);
    bins_[bin] += env_.data_bits;
    if (opt_.streaming) arrivals_[seg] = env_.eng->now();
    if (received_count_ == env_.flow_size && completion_us_ < 0) {
      completion_us_ = env_.eng->now();
    }
  }

  if (pkt.rem_mark) {
    marks_seen++;
    if (seg > recovery_end_) {
      w_ = std::max(1.0, w_ / 2.0);
      recovery_end_ = highest_requested_;
    }
  } else {
    w_ += 1.0 / std::max(1.0, w_);
  }
  issue();
}

TimeUs IcpReceiver::stall_us() const {
  if (!opt_.streaming) return 0;
  return stall_time_us(arrivals_, env_.data_bits, opt_.stream, opt_.start_at);
}

}  // namespace said
