#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "said/content_store.hpp"
#include "said/engine.hpp"
#include "said/link.hpp"
#include "said/monitor.hpp"
#include "said/packet.hpp"

namespace said {

class Node;

// Host-side endpoint of one flow (receiver transport, provider, baseline).
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void start() {}
  virtual void handle_data(Packet pkt) { (void)pkt; }
  virtual void handle_interest(const Packet& pkt) { (void)pkt; }
  virtual void handle_ack(Packet pkt) { (void)pkt; }
};

struct NodeCounters {
  std::int64_t cache_hits = 0;
  std::int64_t cache_misses = 0;
  std::int64_t pit_aggregations = 0;
  std::int64_t unsolicited = 0;
  std::int64_t no_route = 0;
};

// NDN-style forwarding node. Routers keep a FIB (static routes plus
// hop-limited repair prefixes), a PIT with per-face ANP pending-request
// counters and sequence-specific pendings, and an LRU Content Store.
// Hosts dispatch to their attached transports instead of forwarding.
class Node {
 public:
  Node(Engine& eng, Monitor& mon, int id, std::string label, bool is_router,
       std::int64_t cs_capacity_pkts);

  void configure_flows(int n_flows, std::int64_t chunk_size);

  int add_face(HalfLink* out, int peer_id);
  int face_count() const { return static_cast<int>(faces_.size()); }
  int face_peer(int face) const { return faces_[face].peer; }

  void set_static_route(int flow, int face) { static_route_[flow] = face; }
  int static_route(int flow) const { return static_route_[flow]; }
  // The refresh chain stops here; the provider host is not refreshed.
  void set_provider_first_hop(int flow) { provider_first_hop_[flow] = true; }
  void set_multicast_faces(int flow, std::vector<int> faces) {
    mcast_faces_[flow] = std::move(faces);
  }
  void attach_transport(int flow, Transport* t) { transports_[flow] = t; }

  void install_repair_route(int flow, std::int64_t chunk, int face);

  void handle_packet(Packet pkt, int in_face);
  Disposition send(int face, Packet pkt);
  bool face_full(int face) const { return faces_[face].out->full(); }

  // Route choice for a sequence-specific interest: longest prefix first
  // (chunk-level repair entries beat flow-level static routes); repair
  // origin outranks static at equal length. Returns -1 when unroutable.
  int choose_route(int flow, std::int64_t segment) const;

  int id() const { return id_; }
  const std::string& label() const { return label_; }
  bool is_router() const { return is_router_; }
  NodeCounters& counters() { return counters_; }
  const NodeCounters& counters() const { return counters_; }
  ContentStore& content_store() { return cs_; }
  Engine& engine() { return eng_; }
  Monitor& monitor() { return mon_; }

  std::int64_t anp_pr(int flow, int face) const;
  std::int64_t anp_advertised(int flow) const { return anp_[flow].advertised_pr; }
  std::int64_t anp_max_pr(int flow) const;

  TimeUs specific_pit_timeout = 4 * kUsPerSec;

 private:
  struct Face {
    HalfLink* out = nullptr;
    int peer = -1;
  };
  struct AnpFaceState {
    std::int64_t pr = 0;
    bool acker_all = false;
    // flow balance accounting per face
    std::int64_t increments = 0;
    std::int64_t forwarded = 0;
  };
  struct AnpEntry {
    std::map<int, AnpFaceState> faces;
    std::int64_t advertised_pr = 0;
    bool flush_scheduled = false;
  };
  struct SpecificPending {
    std::set<int> faces;
    TimeUs expiry = 0;
    TimeUs last_upstream = 0;
  };
  struct RepairRoute {
    int face = -1;
    TimeUs installed = 0;
  };

  void on_interest(Packet pkt, int in_face);
  void on_data(Packet pkt, int in_face);
  void on_anp_interest(const Packet& pkt, int in_face);
  void on_specific_interest(Packet pkt, int in_face);
  void schedule_refresh_flush(int flow);
  void arm_specific_expiry(int flow, std::int64_t segment);
  std::uint64_t fresh_uid() { return mon_.next_uid(); }

  Engine& eng_;
  Monitor& mon_;
  int id_;
  std::string label_;
  bool is_router_;
  ContentStore cs_;
  NodeCounters counters_;
  std::vector<Face> faces_;
  std::int64_t chunk_size_ = 100;

  std::vector<AnpEntry> anp_;                                // per flow
  std::vector<std::map<std::int64_t, SpecificPending>> specific_;  // per flow
  std::vector<int> static_route_;
  std::vector<char> provider_first_hop_;
  std::vector<std::vector<int>> mcast_faces_;
  std::map<int, Transport*> transports_;
  std::map<std::pair<int, std::int64_t>, RepairRoute> repair_fib_;

  // Upstream re-forward suppression window for repeated specific interests.
  static constexpr TimeUs kRetxGapUs = 250'000;
};

}  // namespace said
