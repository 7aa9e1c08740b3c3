#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "said/link.hpp"
#include "said/naming.hpp"

namespace said {

struct NodeSpec {
  std::string id;
  bool router = true;
  std::int64_t cache_pkts = 0;
};

struct LinkSpec {
  std::string a;
  std::string b;
  double mbps = 10.0;
  std::optional<double> latency_ms;
  std::optional<std::int64_t> queue_pkts;
  std::optional<RemParams> rem;
};

struct FlowReceiverSpec {
  std::string id;
  double start_s = 0.0;
};

struct AckerPolicySpec {
  double rank_target = 0.60;
  double band = 0.05;
  double period_s = 2.0;
};

struct FlowSpec {
  std::string id;
  std::string prefix;  // canonical name text; defaults to /flows/<id>/_v1
  std::string provider;
  std::vector<FlowReceiverSpec> receivers;
  std::int64_t size_pkts = 0;
  std::string protocol = "said";  // said | icp | pgmcc
  std::string mode = "constant";  // constant | acker
  double rate_mbps = 2.0;
  AckerPolicySpec acker;
  std::string app = "file";  // file | streaming
  double playout_mbps = 3.0;
  double lookahead_s = 1.0;
  std::string repair = "peer";  // peer | provider | end | off
  double provider_start_s = 0.0;
  double fair_mbps = 0.0;  // ideal fair rate, for fairness accounting
  std::string group;       // fairness group label
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  double duration_s = 10.0;
  double metrics_bin_s = 0.5;

  // naming / repair
  std::int64_t chunk_size = 100;
  int repair_hop_limit = 2;

  // link defaults, overridable per link
  std::int64_t packet_bytes = 1250;
  double latency_ms = 2.0;
  std::int64_t queue_pkts = 50;
  std::optional<RemParams> rem;  // default derived from queue size

  std::vector<NodeSpec> nodes;
  std::vector<LinkSpec> links;
  std::vector<FlowSpec> flows;

  // Window trace rows can dominate the CSV on long runs; default on.
  bool emit_window_trace = true;

  RemParams rem_for(const LinkSpec& link) const;
  std::int64_t queue_for(const LinkSpec& link) const;
  double latency_for(const LinkSpec& link) const;
  std::int64_t data_bits() const { return packet_bytes * 8; }

  int node_index(const std::string& id) const;  // -1 when missing
};

// Parse/serialize the scenario JSON and validate it. Validation gathers
// every violation into one error message.
ScenarioConfig load_scenario_file(const std::string& path);
ScenarioConfig load_scenario_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& cfg);
void validate_scenario(const ScenarioConfig& cfg);

}  // namespace said
