#include "said/window_control.hpp"

#include <algorithm>

namespace said {

const char* to_string(CcState s) {
  switch (s) {
    case CcState::G: return "G";
    case CcState::P: return "P";
    case CcState::C: return "C";
    case CcState::S: return "S";
    case CcState::Z: return "Z";
  }
  return "?";
}

bool WindowControl::on_mark() {
  if (in_recovery_) return false;
  in_recovery_ = true;
  window_ = std::max(params_.w_min, window_ / 2);
  state_ = CcState::G;
  cons_positive_ = 0;
  cons_zero_ = 0;
  mmpr_ = kInfinitePr;
  return true;
}

void WindowControl::on_window_end() {
  const std::int64_t m = mmpr_;
  mmpr_ = kInfinitePr;
  in_recovery_ = false;

  // MMPR above X (including +inf, for receivers with no branching point on
  // the path) always freezes growth; S stays S, everything else parks in P.
  if (m > params_.x) {
    if (state_ != CcState::S) state_ = CcState::P;
    return;
  }

  switch (state_) {
    case CcState::G:
      window_ += 1;
      if (m > 0) {
        cons_positive_ = 1;
        state_ = CcState::C;
      }
      break;
    case CcState::C:
      window_ += 1;
      if (m == 0) {
        cons_positive_ = 0;
        state_ = CcState::G;
      } else if (++cons_positive_ >= params_.y) {
        state_ = CcState::S;
      }
      break;
    case CcState::P:
      // Growth resumes through C; no increase on the fallback boundary.
      cons_positive_ = m > 0 ? 1 : 0;
      state_ = CcState::C;
      break;
    case CcState::S:
      if (m == 0) {
        cons_zero_ = 1;
        state_ = CcState::Z;
      }
      break;
    case CcState::Z:
      if (m == 0) {
        if (++cons_zero_ >= params_.y) {
          // Y quiet windows without a mark: the provider sped up, resume.
          cons_zero_ = 0;
          state_ = CcState::G;
          window_ += 1;
        }
      } else {
        cons_zero_ = 0;
        state_ = CcState::S;
      }
      break;
  }
}

}  // namespace said
