#pragma once

#include <cstdint>

#include "said/packet.hpp"

namespace said {

// Receiver congestion-window states. Z is the wait state entered from S
// when MMPR drops to zero: the receiver sits out Y windows before growing
// again, so a competitor (which would produce marks) is not mistaken for a
// provider rate increase.
enum class CcState : std::uint8_t { G, P, C, S, Z };

const char* to_string(CcState s);

struct WindowParams {
  std::int64_t x = 5;       // MPR ceiling: stop growing above this
  std::int64_t y = 5;       // windows of stability / wait
  std::int64_t w_init = 2;
  std::int64_t w_min = 1;
};

// Window-increase state machine driven by the minimum piggybacked MPR seen
// in each window (MMPR). Marks are handled out of band by on_mark().
class WindowControl {
 public:
  explicit WindowControl(WindowParams params = {})
      : params_(params), window_(params.w_init) {}

  void observe_mpr(std::int64_t mpr) {
    if (mpr < mmpr_) mmpr_ = mpr;
  }

  // Multiplicative decrease; clears the MMPR counters and returns to G.
  // At most one halving per window interval. Returns true if it acted.
  bool on_mark();

  // Decision at a window boundary (one congestion window of data arrivals).
  void on_window_end();

  std::int64_t window() const { return window_; }
  CcState state() const { return state_; }
  std::int64_t mmpr() const { return mmpr_; }
  std::int64_t consecutive_positive() const { return cons_positive_; }
  std::int64_t consecutive_zero_in_s() const { return cons_zero_; }
  const WindowParams& params() const { return params_; }

 private:
  WindowParams params_;
  std::int64_t window_;
  CcState state_ = CcState::G;
  std::int64_t mmpr_ = kInfinitePr;
  std::int64_t cons_positive_ = 0;
  std::int64_t cons_zero_ = 0;
  bool in_recovery_ = false;
};

}  // namespace said
