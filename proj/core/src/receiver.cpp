#include "said/receiver.hpp"

#include <algorithm>
#include <memory>

namespace said {

std::vector<std::int64_t> detect_holes(const std::set<std::int64_t>& holes,
                                       std::int64_t playhead, std::int64_t lookahead_segs,
                                       std::size_t max_count) {
  std::vector<std::int64_t> out;
  if (playhead >= 0) {
    auto it = holes.lower_bound(playhead);
    for (; it != holes.end() && *it < playhead + lookahead_segs; ++it) {
      out.push_back(*it);
      if (out.size() >= max_count) return out;
    }
  }
  for (std::int64_t h : holes) {
    if (playhead >= 0 && h >= playhead && h < playhead + lookahead_segs) continue;
    out.push_back(h);
    if (out.size() >= max_count) break;
  }
  return out;
}

Receiver::Receiver(TransportEnv env, ReceiverOptions opt)
    : env_(env),
      opt_(opt),
      wc_(opt.window),
      boundary_target_(opt.window.w_init),
      received_(static_cast<std::size_t>(env.flow_size), 0),
      marked_(static_cast<std::size_t>(env.flow_size), 0),
      first_attempt_(static_cast<std::size_t>(env.flow_size), 0),
      repair_w_(opt.repair_w_init) {
  const std::int64_t n_chunks =
      (env.flow_size + env.naming.chunk_size - 1) / env.naming.chunk_size;
  chunk_remaining_.resize(static_cast<std::size_t>(n_chunks));
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    chunk_remaining_[c] =
        std::min(env.naming.chunk_size, env.flow_size - c * env.naming.chunk_size);
  }
  if (opt.streaming) {
    arrivals_.assign(static_cast<std::size_t>(env.flow_size), kNeverUs);
    playout_ = std::make_unique<OnlinePlayout>(env.flow_size, env.data_bits, opt.stream,
                                               opt.start_at);
  }
}

void Receiver::start() {
  started_ = true;
  last_anp_arrival_ = env_.eng->now();
  if (opt_.anp) issue_anp_requests();
  arm_idle_timer();
}

void Receiver::arm_idle_timer() {
  env_.eng->schedule_in(opt_.idle_timeout / 2, [this] {
    if (complete()) return;
    if (opt_.anp && !stream_over_ &&
        env_.eng->now() - last_anp_arrival_ > opt_.idle_timeout && frontier_ >= 0) {
      stream_over_ = true;
      // tail segments the stream will never deliver become repairable holes
      for (std::int64_t s = frontier_ + 1; s < env_.flow_size; ++s) holes_.insert(s);
    }
    if (!opt_.anp && env_.eng->now() - last_anp_arrival_ > 4 * opt_.idle_timeout &&
        frontier_ >= 0 && !stream_over_) {
      stream_over_ = true;
      for (std::int64_t s = frontier_ + 1; s < env_.flow_size; ++s) holes_.insert(s);
    }
    schedule_repairs();
    arm_idle_timer();
  });
}

bool Receiver::anp_stream_done() const {
  return stream_over_ || frontier_ == env_.flow_size - 1;
}

void Receiver::send_anp_interest(std::int64_t delta) {
  if (outstanding_ >= wc_.window()) {
    env_.mon->window_bound_violations++;
    return;
  }
  Packet pkt;
  pkt.kind = PacketKind::Interest;
  pkt.flow = env_.flow;
  pkt.anp = true;
  pkt.pr_delta = delta;
  pkt.size_bits = kControlBits;
  pkt.uid = env_.mon->next_uid();
  pkt.nonce = pkt.uid;
  outstanding_ += delta;
  env_.host->send(0, std::move(pkt));
}

void Receiver::issue_anp_requests() {
  if (!opt_.anp || anp_stream_done() || complete()) return;
  while (outstanding_ < wc_.window()) send_anp_interest(1);
}

void Receiver::handle_data(Packet pkt) {
  data_arrivals++;
  if (pkt.from_cache) cache_hit_arrivals++;
  if (pkt.checksum != payload_checksum(pkt.flow, pkt.segment)) {
    env_.mon->checksum_mismatches++;
  }
  acker_duties(pkt);
  if (pkt.trigger) reply_stats(*pkt.trigger);

  if (pkt.specific_reply) {
    on_repair_data(pkt);
  } else {
    on_anp_data(pkt);
  }
  schedule_repairs();
}

void Receiver::on_anp_data(Packet& pkt) {
  last_anp_arrival_ = env_.eng->now();
  if (pkt.credited) outstanding_ = std::max<std::int64_t>(0, outstanding_ - 1);
  if (pkt.segment >= 0 && pkt.segment < env_.flow_size &&
      first_attempt_[pkt.segment] < 255) {
    first_attempt_[pkt.segment]++;
  }
  ledger_receive(pkt);

  if (!opt_.anp) return;  // follower mode: no window machinery

  wc_.observe_mpr(pkt.mpr);
  if (pkt.rem_mark) {
    marks_seen++;
    const std::int64_t before = wc_.window();
    if (wc_.on_mark()) {
      halvings_.push_back({env_.eng->now(), before, wc_.window(), wc_.state()});
    }
  }
  arrivals_in_window_++;
  if (arrivals_in_window_ >= boundary_target_) window_boundary();
  issue_anp_requests();
}

void Receiver::window_boundary() {
  trace_.push_back({env_.eng->now(), wc_.window(), wc_.state(), wc_.mmpr()});
  wc_.on_window_end();
  arrivals_in_window_ = 0;
  boundary_target_ = std::max<std::int64_t>(1, wc_.window());
}

void Receiver::on_repair_data(Packet& pkt) {
  auto it = repair_outstanding_.find(pkt.segment);
  if (it != repair_outstanding_.end()) {
    const std::int64_t serial = it->second.serial;
    repair_outstanding_.erase(it);
    if (pkt.rem_mark) {
      repair_halve(serial);
    } else {
      repair_w_ += 1.0 / std::max(1.0, repair_w_);
    }
  }
  if (pkt.from_peer) repairs_from_peers++;
  ledger_receive(pkt);
}

void Receiver::repair_halve(std::int64_t serial) {
  if (serial <= repair_recovery_end_) return;
  repair_w_ = std::max(1.0, repair_w_ / 2.0);
  repair_recovery_end_ = repair_serial_;
}

void Receiver::ledger_receive(const Packet& pkt) {
  const std::int64_t s = pkt.segment;
  if (s < 0 || s >= env_.flow_size) return;
  if (received_[s]) {
    duplicates++;
    return;
  }
  received_[s] = 1;
  marked_[s] = pkt.rem_mark ? 1 : 0;
  received_count_++;
  if (s > frontier_) {
    for (std::int64_t h = frontier_ + 1; h < s; ++h) holes_.insert(h);
    frontier_ = s;
  } else {
    holes_.erase(s);
  }
  given_up_.erase(s);

  const auto bin = static_cast<std::size_t>(env_.eng->now() / bin_width_);
  if (bins_.size() <= bin) bins_.resize(bin + 1, 0);
  bins_[bin] += env_.data_bits;

  if (opt_.streaming) {
    arrivals_[s] = env_.eng->now();
    playout_->on_arrival(s, env_.eng->now());
  }

  const std::int64_t chunk = s / env_.naming.chunk_size;
  if (--chunk_remaining_[chunk] == 0 && opt_.repair == RepairMode::kPeer && announce_cb_) {
    announce_cb_(chunk);
  }

  if (received_count_ == env_.flow_size && completion_us_ < 0) {
    completion_us_ = env_.eng->now();
  }
}

void Receiver::schedule_repairs() {
  if (opt_.repair == RepairMode::kOff || complete()) return;
  if (opt_.repair == RepairMode::kEnd && !anp_stream_done()) return;
  const auto budget = static_cast<std::int64_t>(repair_w_);
  if (static_cast<std::int64_t>(repair_outstanding_.size()) >= budget) return;

  std::int64_t playhead = -1;
  std::int64_t look = 0;
  if (opt_.streaming) {
    playhead = playout_->playhead_segment(env_.eng->now());
    look = playout_->lookahead_segments();
  }
  // Candidates beyond outstanding/given-up; ask for a few extra so the
  // filter below still fills the window.
  const std::size_t want =
      static_cast<std::size_t>(budget) + repair_outstanding_.size() + given_up_.size() + 4;
  for (std::int64_t seg : detect_holes(holes_, playhead, look, want)) {
    if (static_cast<std::int64_t>(repair_outstanding_.size()) >= budget) break;
    if (repair_outstanding_.count(seg) || given_up_.count(seg)) continue;
    issue_repair(seg);
  }
}

void Receiver::issue_repair(std::int64_t seg) {
  repairs_requested++;
  repair_outstanding_[seg] = RepairState{1, ++repair_serial_};
  Packet pkt;
  pkt.kind = PacketKind::Interest;
  pkt.flow = env_.flow;
  pkt.segment = seg;
  pkt.size_bits = kControlBits;
  pkt.uid = env_.mon->next_uid();
  pkt.nonce = pkt.uid;
  env_.host->send(0, std::move(pkt));
  arm_repair_rto(seg, 1);
}

void Receiver::arm_repair_rto(std::int64_t seg, int attempt) {
  const TimeUs wait = opt_.repair_rto << (attempt - 1);  // binary exponential backoff
  env_.eng->schedule_in(wait, [this, seg, attempt] {
    auto it = repair_outstanding_.find(seg);
    if (it == repair_outstanding_.end() || it->second.attempts != attempt) return;
    if (attempt >= opt_.repair_max_attempts) {
      repair_outstanding_.erase(it);
      given_up_.insert(seg);
      unrepaired++;
      schedule_repairs();
      return;
    }
    it->second.attempts++;
    it->second.serial = ++repair_serial_;
    Packet pkt;
    pkt.kind = PacketKind::Interest;
    pkt.flow = env_.flow;
    pkt.segment = seg;
    pkt.size_bits = kControlBits;
    pkt.uid = env_.mon->next_uid();
    pkt.nonce = pkt.uid;
    env_.host->send(0, std::move(pkt));
    arm_repair_rto(seg, attempt + 1);
  });
}

void Receiver::acker_duties(const Packet& pkt) {
  if (pkt.specific_reply) return;
  const int me = env_.host->id();
  const bool tagged = pkt.acker_id == me || pkt.acker_id_next == me;

  if (pkt.request_feedback || tagged) {
    Packet ack;
    ack.kind = PacketKind::Ack;
    ack.flow = env_.flow;
    ack.segment = pkt.segment;
    ack.from_receiver = me;
    ack.ack_marked = pkt.rem_mark;
    ack.size_bits = kControlBits;
    ack.uid = env_.mon->next_uid();
    env_.host->send(0, std::move(ack));
  }

  if (tagged && !subscribed_) {
    subscribed_ = true;
    Packet sub;
    sub.kind = PacketKind::Interest;
    sub.flow = env_.flow;
    sub.anp = true;
    sub.acker_subscribe = true;
    sub.pr_delta = 0;
    sub.size_bits = kControlBits;
    sub.uid = env_.mon->next_uid();
    env_.host->send(0, std::move(sub));
  } else if (!tagged && subscribed_ && pkt.acker_id >= 0) {
    subscribed_ = false;
    Packet unsub;
    unsub.kind = PacketKind::Interest;
    unsub.flow = env_.flow;
    unsub.anp = true;
    unsub.acker_unsubscribe = true;
    unsub.pr_delta = 0;
    unsub.size_bits = kControlBits;
    unsub.uid = env_.mon->next_uid();
    env_.host->send(0, std::move(unsub));
  }
}

void Receiver::reply_stats(const TriggerInfo& trig) {
  StatsReport rep;
  rep.range_start = trig.start_seg;
  rep.last_receive_id = -1;
  const std::int64_t lo = std::max<std::int64_t>(0, trig.start_seg);
  const std::int64_t hi = std::min(env_.flow_size - 1, trig.end_seg);
  for (std::int64_t s = lo; s <= hi; ++s) {
    if (received_[s]) {
      rep.receive_pkt_count++;
      rep.last_receive_id = s;
      if (marked_[s]) rep.mark_pkt_count++;
    }
  }
  Packet ack;
  ack.kind = PacketKind::Ack;
  ack.flow = env_.flow;
  ack.from_receiver = env_.host->id();
  ack.stats = rep;
  ack.size_bits = kControlBits;
  ack.uid = env_.mon->next_uid();
  env_.host->send(0, std::move(ack));
}

void Receiver::handle_interest(const Packet& pkt) {
  // Peer repair: any end host holding the segment may answer.
  if (pkt.anp || pkt.segment < 0 || pkt.segment >= env_.flow_size) return;
  if (!received_[pkt.segment]) return;
  Packet data;
  data.kind = PacketKind::Data;
  data.flow = env_.flow;
  data.segment = pkt.segment;
  data.size_bits = env_.data_bits;
  data.specific_reply = true;
  data.from_peer = true;
  data.checksum = payload_checksum(env_.flow, pkt.segment);
  data.uid = env_.mon->next_uid();
  env_.host->send(0, std::move(data));
}

TimeUs Receiver::stall_us() const {
  if (!opt_.streaming) return 0;
  return stall_time_us(arrivals_, env_.data_bits, opt_.stream, opt_.start_at);
}

}  // namespace said
