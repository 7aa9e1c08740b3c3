#include "said/node.hpp"

#include <algorithm>

#include "said/naming.hpp"

namespace said {

Node::Node(Engine& eng, Monitor& mon, int id, std::string label, bool is_router,
           std::int64_t cs_capacity_pkts)
    : eng_(eng), mon_(mon), id_(id), label_(std::move(label)), is_router_(is_router),
      cs_(cs_capacity_pkts) {}

void Node::configure_flows(int n_flows, std::int64_t chunk_size) {
  chunk_size_ = chunk_size;
  anp_.assign(n_flows, AnpEntry{});
  specific_.assign(n_flows, {});
  static_route_.assign(n_flows, -1);
  provider_first_hop_.assign(n_flows, 0);
  mcast_faces_.assign(n_flows, {});
}

int Node::add_face(HalfLink* out, int peer_id) {
  faces_.push_back(Face{out, peer_id});
  return static_cast<int>(faces_.size()) - 1;
}

Disposition Node::send(int face, Packet pkt) {
  return faces_[face].out->enqueue(std::move(pkt));
}

void Node::install_repair_route(int flow, std::int64_t chunk, int face) {
  auto& route = repair_fib_[{flow, chunk}];
  route.face = face;
  route.installed = eng_.now();
}

int Node::choose_route(int flow, std::int64_t segment) const {
  if (segment >= 0) {
    auto it = repair_fib_.find({flow, chunk_of(segment, chunk_size_)});
    if (it != repair_fib_.end()) return it->second.face;
  }
  return static_route_[flow];
}

std::int64_t Node::anp_pr(int flow, int face) const {
  auto it = anp_[flow].faces.find(face);
  return it == anp_[flow].faces.end() ? 0 : it->second.pr;
}

std::int64_t Node::anp_max_pr(int flow) const {
  std::int64_t m = 0;
  for (const auto& [f, st] : anp_[flow].faces) m = std::max(m, st.pr);
  return m;
}

void Node::handle_packet(Packet pkt, int in_face) {
  switch (pkt.kind) {
    case PacketKind::Interest:
      on_interest(std::move(pkt), in_face);
      break;
    case PacketKind::Data:
      on_data(std::move(pkt), in_face);
      break;
    case PacketKind::Ack: {
      auto it = transports_.find(pkt.flow);
      if (it != transports_.end()) {
        it->second->handle_ack(std::move(pkt));
        return;
      }
      const int up = static_route_[pkt.flow];
      if (up >= 0) send(up, std::move(pkt));
      break;
    }
    case PacketKind::Trigger:
      // Triggers ride Data packets; a bare Trigger has nowhere to go.
      break;
  }
}

void Node::on_interest(Packet pkt, int in_face) {
  if (!is_router_) {
    auto it = transports_.find(pkt.flow);
    if (it != transports_.end()) it->second->handle_interest(pkt);
    return;
  }
  if (pkt.anp) {
    on_anp_interest(pkt, in_face);
  } else {
    on_specific_interest(std::move(pkt), in_face);
  }
}

void Node::on_anp_interest(const Packet& pkt, int in_face) {
  auto& entry = anp_[pkt.flow];
  auto& st = entry.faces[in_face];

  if (pkt.acker_subscribe || pkt.acker_unsubscribe) {
    st.acker_all = pkt.acker_subscribe;
    const int up = static_route_[pkt.flow];
    if (up >= 0 && !provider_first_hop_[pkt.flow]) {
      Packet fwd = pkt;
      fwd.pr_delta = 0;
      send(up, std::move(fwd));
    }
    return;
  }

  // An ANP interest does not check the Content Store; it only adds demand.
  st.pr += pkt.pr_delta;
  st.increments += pkt.pr_delta;
  if (st.pr < 0) mon_.negative_pr_violations++;
  schedule_refresh_flush(pkt.flow);
}

void Node::schedule_refresh_flush(int flow) {
  auto& entry = anp_[flow];
  if (entry.flush_scheduled) return;
  entry.flush_scheduled = true;
  // Deferred to the end of this instant so simultaneous increments
  // coalesce into a single upstream refresh carrying the total delta.
  eng_.schedule(eng_.now(), [this, flow] {
    auto& e = anp_[flow];
    e.flush_scheduled = false;
    std::int64_t max_pr = 0;
    for (const auto& [f, st] : e.faces) max_pr = std::max(max_pr, st.pr);
    const std::int64_t delta = max_pr - e.advertised_pr;
    if (delta <= 0) return;
    e.advertised_pr = max_pr;
    const int up = static_route_[flow];
    if (up < 0 || provider_first_hop_[flow]) return;
    Packet refresh;
    refresh.kind = PacketKind::Interest;
    refresh.flow = flow;
    refresh.anp = true;
    refresh.pr_delta = delta;
    refresh.size_bits = kRefreshBits;
    refresh.uid = fresh_uid();
    send(up, std::move(refresh));
  });
}

void Node::on_specific_interest(Packet pkt, int in_face) {
  auto cached = cs_.lookup(pkt.flow, pkt.segment);
  if (cached) {
    counters_.cache_hits++;
    Packet reply = *cached;
    reply.kind = PacketKind::Data;
    reply.specific_reply = true;
    reply.from_cache = true;
    reply.credited = false;
    reply.uid = fresh_uid();
    send(in_face, std::move(reply));
    return;
  }
  counters_.cache_misses++;

  auto& pending = specific_[pkt.flow];
  auto it = pending.find(pkt.segment);
  if (it != pending.end()) {
    // NDN aggregation: record the extra face, refresh lifetime, and only
    // re-forward when the previous upstream attempt has gone quiet.
    if (!it->second.faces.insert(in_face).second) {
      if (eng_.now() - it->second.last_upstream >= kRetxGapUs) {
        const int up = choose_route(pkt.flow, pkt.segment);
        if (up >= 0) {
          it->second.last_upstream = eng_.now();
          send(up, std::move(pkt));
        }
      }
    } else {
      counters_.pit_aggregations++;
    }
    it->second.expiry = eng_.now() + specific_pit_timeout;
    return;
  }

  const int up = choose_route(pkt.flow, pkt.segment);
  if (up < 0) {
    counters_.no_route++;
    return;
  }
  SpecificPending st;
  st.faces.insert(in_face);
  st.expiry = eng_.now() + specific_pit_timeout;
  st.last_upstream = eng_.now();
  pending.emplace(pkt.segment, std::move(st));
  arm_specific_expiry(pkt.flow, pkt.segment);
  send(up, std::move(pkt));
}

void Node::arm_specific_expiry(int flow, std::int64_t segment) {
  auto it = specific_[flow].find(segment);
  if (it == specific_[flow].end()) return;
  const TimeUs when = it->second.expiry;
  eng_.schedule(when, [this, flow, segment, when] {
    auto& pending = specific_[flow];
    auto it2 = pending.find(segment);
    if (it2 == pending.end()) return;
    if (it2->second.expiry <= when) {
      pending.erase(it2);
    } else {
      arm_specific_expiry(flow, segment);  // lifetime was refreshed
    }
  });
}

void Node::on_data(Packet pkt, int in_face) {
  if (!is_router_) {
    auto it = transports_.find(pkt.flow);
    if (it != transports_.end()) {
      it->second->handle_data(std::move(pkt));
    }
    return;
  }

  auto& entry = anp_[pkt.flow];
  if (pkt.credited && entry.advertised_pr > 0) entry.advertised_pr--;

  bool any_pending = false;

  // Sequence-specific pendings first; a face gets at most one copy.
  std::set<int> satisfied;
  auto& pending = specific_[pkt.flow];
  auto pit = pending.find(pkt.segment);
  if (pit != pending.end()) {
    any_pending = true;
    for (int f : pit->second.faces) {
      if (f == in_face) continue;
      if (face_full(f)) continue;  // keep the pending; retry paths recover it
      Packet copy = pkt;
      copy.kind = PacketKind::Data;
      copy.specific_reply = true;
      copy.credited = false;
      copy.uid = fresh_uid();
      mon_.inherit_shadow(pkt.uid, copy.uid);
      send(f, std::move(copy));
      satisfied.insert(f);
    }
    for (int f : satisfied) pit->second.faces.erase(f);
    if (pit->second.faces.empty()) pending.erase(pit);
  }

  if (!pkt.specific_reply) {
    if (!mcast_faces_[pkt.flow].empty()) {
      // Sender-driven multicast (pgmcc baseline): push down the static tree.
      any_pending = true;
      for (int f : mcast_faces_[pkt.flow]) {
        if (f == in_face || satisfied.count(f)) continue;
        Packet copy = pkt;
        copy.credited = false;
        copy.uid = fresh_uid();
        mon_.inherit_shadow(pkt.uid, copy.uid);
        send(f, std::move(copy));
      }
    } else {
      for (auto& [f, st] : entry.faces) {
        if (f == in_face || satisfied.count(f)) continue;
        if (st.acker_all) {
          any_pending = true;
          Packet copy = pkt;
          copy.credited = false;
          copy.uid = fresh_uid();
          mon_.inherit_shadow(pkt.uid, copy.uid);
          send(f, std::move(copy));
        } else if (st.pr > 0) {
          any_pending = true;
          if (face_full(f)) continue;  // skip, retain the pending request
          st.pr--;
          st.forwarded++;
          if (st.forwarded > st.increments) mon_.flow_balance_violations++;
          Packet copy = pkt;
          copy.credited = true;
          copy.mpr = std::min(pkt.mpr, st.pr);
          copy.uid = fresh_uid();
          mon_.record_credited_forward(pkt.uid, copy.uid, st.pr);
          send(f, std::move(copy));
        }
      }
    }
  }

  cs_.insert(pkt);
  if (!any_pending) counters_.unsolicited++;
}

}  // namespace said
