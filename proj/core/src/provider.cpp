#include "said/provider.hpp"

#include <algorithm>
#include <cmath>

namespace said {

double acker_score(const StatsReport& s) {
  const std::int64_t span = s.last_receive_id - s.range_start;
  if (span <= 0 || s.receive_pkt_count <= 0) return 0.0;
  return (static_cast<double>(s.receive_pkt_count) -
          0.5 * static_cast<double>(s.mark_pkt_count)) /
         static_cast<double>(span);
}

int select_acker(const std::map<int, double>& scores, const AckerPolicy& policy, int current) {
  if (scores.empty()) return current;
  std::vector<std::pair<int, double>> order(scores.begin(), scores.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const auto n = static_cast<std::int64_t>(order.size());
  for (std::int64_t i = 0; i < n; ++i) {
    if (order[i].first == current) {
      const double frac = static_cast<double>(i + 1) / static_cast<double>(n);
      if (frac >= policy.rank_target - policy.band && frac <= policy.rank_target + policy.band) {
        return current;
      }
      break;
    }
  }
  auto rank = static_cast<std::int64_t>(std::llround(policy.rank_target * static_cast<double>(n)));
  rank = std::clamp<std::int64_t>(rank, 1, n);
  return order[rank - 1].first;
}

double pgmcc_rate(const std::map<int, double>& receiver_goodputs) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [id, rate] : receiver_goodputs) m = std::min(m, rate);
  return m;
}

Provider::Provider(TransportEnv env, ProviderOptions opt)
    : env_(env),
      opt_(opt),
      w_(opt.w_init),
      first_attempt_tx_(static_cast<std::size_t>(env.flow_size), 0),
      served_(static_cast<std::size_t>(env.flow_size), 0) {}

void Provider::start() {
  last_ack_at_ = env_.eng->now();
  switch (opt_.mode) {
    case ProviderMode::kConstantRate:
      constant_loop();
      break;
    case ProviderMode::kAckerPaced:
    case ProviderMode::kPgmcc:
      try_window_send();
      arm_watchdog();
      env_.eng->schedule_in(opt_.policy.period, [this] { stats_cycle(); });
      break;
    case ProviderMode::kReactive:
      break;
  }
}

void Provider::emit_segment(std::int64_t seg) {
  Packet data;
  data.kind = PacketKind::Data;
  data.flow = env_.flow;
  data.segment = seg;
  data.size_bits = env_.data_bits;
  data.mpr = kInfinitePr;
  data.checksum = payload_checksum(env_.flow, seg);
  data.uid = env_.mon->next_uid();
  data.acker_id = acker_;
  data.acker_id_next = acker_next_;
  data.request_feedback =
      seg == 0 && (opt_.mode == ProviderMode::kAckerPaced || opt_.mode == ProviderMode::kPgmcc);
  if (pending_trigger_) {
    data.trigger = *pending_trigger_;
    pending_trigger_.reset();
  }
  if (first_attempt_tx_[seg] < 255) first_attempt_tx_[seg]++;
  const auto bin = static_cast<std::size_t>(env_.eng->now() / bin_width_);
  if (bins_.size() <= bin) bins_.resize(bin + 1, 0);
  bins_[bin] += env_.data_bits;
  env_.host->send(0, std::move(data));
}

void Provider::constant_loop() {
  if (emission_done()) return;
  emit_segment(next_seg_++);
  env_.eng->schedule_in(service_time_us(env_.data_bits, opt_.rate_bps), [this] {
    constant_loop();
  });
}

void Provider::try_window_send() {
  if (opt_.mode != ProviderMode::kAckerPaced && opt_.mode != ProviderMode::kPgmcc) return;
  // Until the first feedback elects an ACKer, only the initial window goes out.
  while (!emission_done() &&
         next_seg_ - 1 - highest_acked_ < static_cast<std::int64_t>(w_)) {
    emit_segment(next_seg_++);
  }
}

void Provider::arm_watchdog() {
  env_.eng->schedule_in(kUsPerSec / 2, [this] {
    if (emission_done()) return;
    if (env_.eng->now() - last_ack_at_ > kUsPerSec) {
      // Feedback stalled: back off and slide the window forward one slot.
      w_ = std::max(1.0, w_ / 2.0);
      highest_acked_++;
      last_ack_at_ = env_.eng->now();
      try_window_send();
    }
    arm_watchdog();
  });
}

void Provider::stats_cycle() {
  if (emission_done()) return;
  if (next_seg_ > range_start_) {
    pending_trigger_ = TriggerInfo{range_start_, next_seg_ - 1};
    range_start_ = next_seg_;
    round_stats_.clear();
    env_.eng->schedule_in(opt_.policy.period * 3 / 4, [this] { run_election(); });
  }
  env_.eng->schedule_in(opt_.policy.period, [this] { stats_cycle(); });
}

void Provider::run_election() {
  if (round_stats_.empty()) return;
  int chosen = acker_;
  if (opt_.mode == ProviderMode::kAckerPaced) {
    std::map<int, double> scores;
    for (const auto& [id, rep] : round_stats_) scores[id] = acker_score(rep);
    chosen = select_acker(scores, opt_.policy, acker_);
  } else {
    // pgmcc: align to the slowest receiver (argmin goodput, ties by id).
    std::map<int, double> goodputs;
    for (const auto& [id, rep] : round_stats_) {
      goodputs[id] = static_cast<double>(rep.receive_pkt_count);
    }
    double current = std::numeric_limits<double>::infinity();
    if (auto it = goodputs.find(acker_); it != goodputs.end()) current = it->second;
    int slowest = acker_;
    double best = current;
    for (const auto& [id, rate] : goodputs) {
      if (rate < best || (slowest < 0 && std::isinf(best))) {
        best = rate;
        slowest = id;
      }
    }
    chosen = slowest;
  }
  if (chosen >= 0 && chosen != acker_ && chosen != acker_next_) {
    acker_next_ = chosen;
    elections_++;
  }
}

void Provider::handle_ack(Packet pkt) {
  if (pkt.stats) {
    round_stats_[pkt.from_receiver] = *pkt.stats;
    return;
  }
  if (acker_ < 0 && pkt.from_receiver >= 0) {
    // Feedback to the first packet elects the initial ACKer.
    acker_ = pkt.from_receiver;
    acker_history_.emplace_back(env_.eng->now(), acker_);
    elections_++;
  } else if (acker_next_ >= 0 && pkt.from_receiver == acker_next_) {
    // First Ack from the new ACKer completes the switch. Its Acks during
    // the dual-tag phase are not used for window control.
    acker_ = acker_next_;
    acker_next_ = -1;
    acker_history_.emplace_back(env_.eng->now(), acker_);
    last_ack_at_ = env_.eng->now();
    return;
  }
  if (pkt.from_receiver != acker_) return;

  last_ack_at_ = env_.eng->now();
  highest_acked_ = std::max(highest_acked_, pkt.segment);
  if (pkt.ack_marked && pkt.segment > recovery_end_) {
    w_ = std::max(1.0, w_ / 2.0);
    recovery_end_ = next_seg_;
  } else {
    w_ += 1.0 / std::max(1.0, w_);
  }
  try_window_send();
}

void Provider::serve_specific(std::int64_t seg) {
  Packet data;
  data.kind = PacketKind::Data;
  data.flow = env_.flow;
  data.segment = seg;
  data.size_bits = env_.data_bits;
  data.specific_reply = true;
  data.checksum = payload_checksum(env_.flow, seg);
  data.uid = env_.mon->next_uid();
  const auto bin = static_cast<std::size_t>(env_.eng->now() / bin_width_);
  if (bins_.size() <= bin) bins_.resize(bin + 1, 0);
  bins_[bin] += env_.data_bits;
  env_.host->send(0, std::move(data));
}

void Provider::handle_interest(const Packet& pkt) {
  if (pkt.anp) return;
  const std::int64_t seg = pkt.segment;
  if (seg < 0 || seg >= env_.flow_size) return;
  if (first_attempt_tx_[seg] > 0 || served_[seg]) retransmissions_seen_++;
  served_[seg] = 1;
  serve_specific(seg);
}

}  // namespace said
