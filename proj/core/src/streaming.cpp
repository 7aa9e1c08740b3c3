#include "said/streaming.hpp"

#include <algorithm>
#include <deque>

namespace said {

namespace {

std::int64_t lookahead_count(TimeUs lookahead, TimeUs seg_dur) {
  return std::max<std::int64_t>(1, (lookahead + seg_dur - 1) / seg_dur);
}

}  // namespace

TimeUs stall_time_us(const std::vector<TimeUs>& arrivals, std::int64_t data_bits,
                     const StreamingConfig& cfg, TimeUs start_us) {
  const auto n = static_cast<std::int64_t>(arrivals.size());
  if (n == 0) return 0;
  const TimeUs seg_dur = service_time_us(data_bits, cfg.playout_bps);
  const std::int64_t look = lookahead_count(cfg.lookahead_us, seg_dur);

  for (TimeUs a : arrivals) {
    if (a >= kNeverUs) return kNeverUs;
  }

  // Sliding-window max of arrival times over [k, k+look).
  std::deque<std::int64_t> maxq;
  auto push = [&](std::int64_t i) {
    while (!maxq.empty() && arrivals[maxq.back()] <= arrivals[i]) maxq.pop_back();
    maxq.push_back(i);
  };
  for (std::int64_t i = 0; i < std::min(look, n); ++i) push(i);

  TimeUs wall = start_us;
  for (std::int64_t k = 0; k < n; ++k) {
    const TimeUs ready = arrivals[maxq.front()];
    wall = std::max(wall, ready);
    wall += seg_dur;
    if (maxq.front() == k) maxq.pop_front();
    if (k + look < n) push(k + look);
  }
  const TimeUs media_len = seg_dur * n;
  return wall - start_us - media_len;
}

OnlinePlayout::OnlinePlayout(std::int64_t n_segments, std::int64_t data_bits,
                             const StreamingConfig& cfg, TimeUs start_us)
    : n_(n_segments),
      seg_dur_(service_time_us(data_bits, cfg.playout_bps)),
      lookahead_segs_(lookahead_count(cfg.lookahead_us, seg_dur_)),
      have_(static_cast<std::size_t>(n_segments), 0),
      arr_(static_cast<std::size_t>(n_segments), kNeverUs),
      wall_(start_us) {}

bool OnlinePlayout::window_ready(std::int64_t k) const {
  const std::int64_t end = std::min(n_, k + lookahead_segs_);
  for (std::int64_t i = k; i < end; ++i) {
    if (!have_[i]) return false;
  }
  return true;
}

void OnlinePlayout::on_arrival(std::int64_t segment, TimeUs now) {
  if (segment < 0 || segment >= n_ || have_[segment]) return;
  have_[segment] = 1;
  arr_[segment] = now;
}

std::int64_t OnlinePlayout::playhead_segment(TimeUs now) {
  while (head_ < n_ && window_ready(head_)) {
    TimeUs ready = wall_;
    const std::int64_t end = std::min(n_, head_ + lookahead_segs_);
    for (std::int64_t i = head_; i < end; ++i) ready = std::max(ready, arr_[i]);
    if (ready + seg_dur_ > now) break;  // still playing (or waiting on) head_
    wall_ = ready + seg_dur_;
    head_++;
  }
  return head_;
}

}  // namespace said
