#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "said/receiver.hpp"

namespace said {

struct AckerPolicy {
  double rank_target = 0.60;  // R: rank fraction of the receiver population
  double band = 0.05;         // R_th: keep the current ACKer inside R +/- band
  TimeUs period = 2 * kUsPerSec;
};

// Score from the appendix statistics: a marked packet counts half.
// Degenerate spans (last <= start, or nothing received) score 0.
double acker_score(const StatsReport& s);

// Receivers sorted by score descending (ties by lower id). The current
// ACKer survives while its rank fraction stays within [R-R_th, R+R_th];
// otherwise the receiver at rank fraction R (rounded to nearest) wins.
int select_acker(const std::map<int, double>& scores, const AckerPolicy& policy, int current);

// pgmcc pacing rule: the provider aligns to the slowest receiver.
double pgmcc_rate(const std::map<int, double>& receiver_goodputs);

enum class ProviderMode : std::uint8_t {
  kConstantRate,  // fixed emission interval
  kAckerPaced,    // classic window loop against the elected ACKer
  kPgmcc,         // window loop against the slowest receiver
  kReactive,      // serves specific interests only (ICP origin server)
};

struct ProviderOptions {
  ProviderMode mode = ProviderMode::kConstantRate;
  std::int64_t rate_bps = 2'000'000;  // constant mode
  AckerPolicy policy;
  double w_init = 2.0;
  TimeUs start_at = 0;
};

class Provider : public Transport {
 public:
  Provider(TransportEnv env, ProviderOptions opt);

  void start() override;
  void handle_interest(const Packet& pkt) override;
  void handle_ack(Packet pkt) override;

  // --- metrics ---
  std::int64_t emitted() const { return next_seg_; }
  bool emission_done() const { return next_seg_ >= env_.flow_size; }
  int current_acker() const { return acker_; }
  std::int64_t elections() const { return elections_; }
  std::int64_t retransmissions_seen() const { return retransmissions_seen_; }
  const std::vector<std::uint8_t>& first_attempt_tx() const { return first_attempt_tx_; }

  void set_rate_bin(TimeUs width) { bin_width_ = width; }
  const std::vector<std::int64_t>& send_bins() const { return bins_; }
  const std::vector<std::pair<TimeUs, int>>& acker_history() const { return acker_history_; }

 private:
  void emit_segment(std::int64_t seg);
  void constant_loop();
  void try_window_send();
  void arm_watchdog();
  void stats_cycle();
  void run_election();
  void serve_specific(std::int64_t seg);

  TransportEnv env_;
  ProviderOptions opt_;

  std::int64_t next_seg_ = 0;
  double w_;
  std::int64_t highest_acked_ = -1;
  std::int64_t recovery_end_ = -1;
  TimeUs last_ack_at_ = 0;

  int acker_ = -1;
  int acker_next_ = -1;
  std::int64_t elections_ = 0;
  std::vector<std::pair<TimeUs, int>> acker_history_;

  std::optional<TriggerInfo> pending_trigger_;
  std::int64_t range_start_ = 0;
  std::map<int, StatsReport> round_stats_;

  std::vector<std::uint8_t> first_attempt_tx_;
  std::vector<std::uint8_t> served_;
  std::int64_t retransmissions_seen_ = 0;

  TimeUs bin_width_ = kUsPerSec / 2;
  std::vector<std::int64_t> bins_;
};

}  // namespace said
