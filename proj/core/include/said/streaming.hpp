#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "said/time.hpp"

namespace said {

constexpr TimeUs kNeverUs = std::numeric_limits<TimeUs>::max() / 4;

struct StreamingConfig {
  std::int64_t playout_bps = 3'000'000;
  TimeUs lookahead_us = kUsPerSec;  // clock runs only with the next 1 s buffered
};

// Total playout-clock pause time, startup wait included. The clock advances
// only while every segment covering the next `lookahead` of media is
// already present. `arrivals` holds per-segment arrival times (kNeverUs for
// segments that never arrived, which makes the result kNeverUs).
// `start_us` is when the receiver began; `data_bits` the media per segment.
TimeUs stall_time_us(const std::vector<TimeUs>& arrivals, std::int64_t data_bits,
                     const StreamingConfig& cfg, TimeUs start_us = 0);

// Incremental playhead estimate for repair prioritization: the index of the
// media segment the playout clock has reached, given arrivals so far.
class OnlinePlayout {
 public:
  OnlinePlayout(std::int64_t n_segments, std::int64_t data_bits, const StreamingConfig& cfg,
                TimeUs start_us);

  void on_arrival(std::int64_t segment, TimeUs now);
  std::int64_t playhead_segment(TimeUs now);
  std::int64_t lookahead_segments() const { return lookahead_segs_; }

 private:
  bool window_ready(std::int64_t k) const;

  std::int64_t n_;
  TimeUs seg_dur_;
  std::int64_t lookahead_segs_;
  std::vector<char> have_;
  std::vector<TimeUs> arr_;
  std::int64_t head_ = 0;   // next segment whose playback has not started
  TimeUs wall_ = 0;         // time playback of head_ may begin
};

}  // namespace said
