#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "said/packet.hpp"
#include "said/time.hpp"

namespace said {

// Always-on invariant bookkeeping shared by every node in a run. Checks are
// cheap counters; property tests assert the violation counts stay zero.
struct Monitor {
  // MPR shadow trace: per data uid, the per-face PR observed at each
  // credited forwarding step. The receiver compares the stamped MPR
  // against the running minimum recorded here.
  bool shadow_mpr = false;
  std::map<std::uint64_t, std::int64_t> shadow_min_pr;

  std::uint64_t uid_counter = 0;
  std::uint64_t next_uid() { return ++uid_counter; }

  // Copies inherit the branch minimum recorded so far for their parent.
  void inherit_shadow(std::uint64_t parent, std::uint64_t child) {
    if (!shadow_mpr) return;
    auto it = shadow_min_pr.find(parent);
    if (it != shadow_min_pr.end()) shadow_min_pr[child] = it->second;
  }

  std::int64_t flow_balance_violations = 0;
  std::int64_t negative_pr_violations = 0;
  std::int64_t mpr_trace_mismatches = 0;
  std::int64_t halving_violations = 0;
  std::int64_t window_bound_violations = 0;
  std::int64_t checksum_mismatches = 0;
  std::int64_t icp_order_violations = 0;

  void record_credited_forward(std::uint64_t parent, std::uint64_t child,
                               std::int64_t pr_after) {
    if (!shadow_mpr) return;
    std::int64_t base = kInfinitePr;
    auto it = shadow_min_pr.find(parent);
    if (it != shadow_min_pr.end()) base = it->second;
    shadow_min_pr[child] = pr_after < base ? pr_after : base;
  }

  void check_delivered_mpr(std::uint64_t uid, std::int64_t stamped) {
    if (!shadow_mpr) return;
    auto it = shadow_min_pr.find(uid);
    const std::int64_t expected = it == shadow_min_pr.end() ? kInfinitePr : it->second;
    if (expected != stamped) mpr_trace_mismatches++;
  }

  bool clean() const {
    return flow_balance_violations == 0 && negative_pr_violations == 0 &&
           mpr_trace_mismatches == 0 && halving_violations == 0 &&
           window_bound_violations == 0 && checksum_mismatches == 0 &&
           icp_order_violations == 0;
  }
};

}  // namespace said
