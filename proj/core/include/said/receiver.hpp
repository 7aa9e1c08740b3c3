#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "said/naming.hpp"
#include "said/node.hpp"
#include "said/streaming.hpp"
#include "said/window_control.hpp"

namespace said {

enum class RepairMode : std::uint8_t { kOff, kPeer, kProvider, kEnd };

// What a transport needs from the world it is wired into.
struct TransportEnv {
  Engine* eng = nullptr;
  Monitor* mon = nullptr;
  Node* host = nullptr;  // hosts are single-homed; face 0 is the uplink
  int flow = 0;
  std::int64_t flow_size = 0;
  std::int64_t data_bits = 0;
  NamingConfig naming;
};

struct ReceiverOptions {
  WindowParams window;
  RepairMode repair = RepairMode::kPeer;
  bool anp = true;  // false: sender-driven follower (pgmcc baseline)
  double repair_w_init = 2.0;
  TimeUs repair_rto = 4 * kUsPerSec;
  int repair_max_attempts = 5;
  TimeUs idle_timeout = kUsPerSec;  // silence -> the ANP stream is over
  bool streaming = false;
  StreamingConfig stream;
  TimeUs start_at = 0;
};

// Hole priority: inside the playout lookahead first, then ascending.
// File receivers pass playhead < 0 to get plain ascending order.
std::vector<std::int64_t> detect_holes(const std::set<std::int64_t>& holes,
                                       std::int64_t playhead, std::int64_t lookahead_segs,
                                       std::size_t max_count);

struct WindowTraceRow {
  TimeUs t;
  std::int64_t window;
  CcState state;
  std::int64_t mmpr;  // value decided on at this boundary
};

struct HalvingEvent {
  TimeUs t;
  std::int64_t before;
  std::int64_t after;
  CcState state_after;
};

// Receiver-side transport: ANP request window with MMPR-driven control,
// hole detection and repair over its own in-sequence AIMD window, chunk
// announcements, ACKer duties, and reception statistics.
class Receiver : public Transport {
 public:
  Receiver(TransportEnv env, ReceiverOptions opt);

  void start() override;
  void handle_data(Packet pkt) override;
  void handle_interest(const Packet& pkt) override;  // peers serve repairs

  void set_announce_cb(std::function<void(std::int64_t chunk)> cb) {
    announce_cb_ = std::move(cb);
  }

  // --- observable state / metrics ---
  std::int64_t received_count() const { return received_count_; }
  bool complete() const { return received_count_ == env_.flow_size; }
  TimeUs completion_us() const { return completion_us_; }
  std::int64_t frontier() const { return frontier_; }
  const std::set<std::int64_t>& holes() const { return holes_; }
  const WindowControl& window_control() const { return wc_; }
  std::int64_t outstanding() const { return outstanding_; }

  std::int64_t repairs_requested = 0;
  std::int64_t repairs_from_peers = 0;
  std::int64_t unrepaired = 0;
  std::int64_t duplicates = 0;
  std::int64_t cache_hit_arrivals = 0;
  std::int64_t data_arrivals = 0;
  std::int64_t marks_seen = 0;

  // time-binned unique-goodput in bits (bin width set by the runner)
  void set_goodput_bin(TimeUs width) { bin_width_ = width; }
  const std::vector<std::int64_t>& goodput_bins() const { return bins_; }

  const std::vector<WindowTraceRow>& window_trace() const { return trace_; }
  const std::vector<HalvingEvent>& halvings() const { return halvings_; }
  const std::vector<TimeUs>& arrival_times() const { return arrivals_; }
  const std::vector<std::uint8_t>& first_attempt_counts() const { return first_attempt_; }

  TimeUs stall_us() const;  // streaming receivers only

  int node_id() const { return env_.host->id(); }

 private:
  void issue_anp_requests();
  void send_anp_interest(std::int64_t delta);
  void on_anp_data(Packet& pkt);
  void on_repair_data(Packet& pkt);
  void ledger_receive(const Packet& pkt);
  void window_boundary();
  void schedule_repairs();
  void issue_repair(std::int64_t seg);
  void arm_repair_rto(std::int64_t seg, int attempt);
  void repair_halve(std::int64_t serial);
  void acker_duties(const Packet& pkt);
  void reply_stats(const TriggerInfo& trig);
  void arm_idle_timer();
  bool anp_stream_done() const;

  TransportEnv env_;
  ReceiverOptions opt_;
  WindowControl wc_;

  std::int64_t outstanding_ = 0;
  std::int64_t arrivals_in_window_ = 0;
  std::int64_t boundary_target_;

  std::vector<char> received_;
  std::vector<char> marked_;
  std::vector<std::uint8_t> first_attempt_;
  std::int64_t received_count_ = 0;
  std::int64_t frontier_ = -1;  // highest segment seen
  std::set<std::int64_t> holes_;
  std::set<std::int64_t> given_up_;
  TimeUs completion_us_ = -1;
  TimeUs last_anp_arrival_ = 0;
  bool stream_over_ = false;
  bool started_ = false;

  // repair flow: in-sequence AIMD window over the missing list
  struct RepairState {
    int attempts = 0;
    std::int64_t serial = 0;
  };
  std::map<std::int64_t, RepairState> repair_outstanding_;
  double repair_w_;
  std::int64_t repair_serial_ = 0;
  std::int64_t repair_recovery_end_ = -1;

  std::vector<std::int64_t> chunk_remaining_;
  std::function<void(std::int64_t chunk)> announce_cb_;

  bool subscribed_ = false;

  TimeUs bin_width_ = kUsPerSec / 2;
  std::vector<std::int64_t> bins_;
  std::vector<WindowTraceRow> trace_;
  std::vector<HalvingEvent> halvings_;
  std::vector<TimeUs> arrivals_;
  std::unique_ptr<OnlinePlayout> playout_;
};

}  // namespace said
