#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "said/receiver.hpp"

namespace said {

struct IcpOptions {
  double w_init = 2.0;
  TimeUs rto_min = 200'000;
  TimeUs rto_max = 4 * kUsPerSec;
  bool streaming = false;
  StreamingConfig stream;
  TimeUs start_at = 0;
};

// In-sequence receiver-driven baseline: a TCP-like window of outstanding
// sequence-specific interests, AIMD on REM marks ("enhanced to use REM"),
// timeout re-request. Requests are strictly in order from next_needed.
class IcpReceiver : public Transport {
 public:
  IcpReceiver(TransportEnv env, IcpOptions opt);

  void start() override;
  void handle_data(Packet pkt) override;

  bool complete() const { return received_count_ == env_.flow_size; }
  TimeUs completion_us() const { return completion_us_; }
  double window() const { return w_; }
  std::int64_t received_count() const { return received_count_; }

  std::int64_t data_arrivals = 0;
  std::int64_t cache_hit_arrivals = 0;
  std::int64_t duplicates = 0;
  std::int64_t timeouts = 0;
  std::int64_t marks_seen = 0;

  void set_goodput_bin(TimeUs width) { bin_width_ = width; }
  const std::vector<std::int64_t>& goodput_bins() const { return bins_; }
  const std::vector<TimeUs>& arrival_times() const { return arrivals_; }
  TimeUs stall_us() const;

  int node_id() const { return env_.host->id(); }

 private:
  void issue();
  void request(std::int64_t seg);
  void arm_rto(std::int64_t seg, int attempt);

  TransportEnv env_;
  IcpOptions opt_;

  double w_;
  std::int64_t next_to_request_ = 0;
  std::int64_t highest_requested_ = -1;
  std::int64_t recovery_end_ = -1;
  std::map<std::int64_t, TimeUs> outstanding_;  // seg -> send time
  std::map<std::int64_t, int> attempts_;
  TimeUs srtt_ = 0;

  std::vector<char> received_;
  std::int64_t received_count_ = 0;
  TimeUs completion_us_ = -1;

  TimeUs bin_width_ = kUsPerSec / 2;
  std::vector<std::int64_t> bins_;
  std::vector<TimeUs> arrivals_;
};

}  // namespace said
