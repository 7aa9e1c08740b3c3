#pragma once

#include <cstdint>
#include <list>
#include <map>
#include <optional>

#include "said/packet.hpp"

namespace said {

// Fixed-capacity LRU store of Data packets keyed by (flow, segment).
// Lookup refreshes recency; insert at capacity evicts the LRU entry.
class ContentStore {
 public:
  explicit ContentStore(std::int64_t capacity_pkts = 0) : capacity_(capacity_pkts) {}

  void insert(const Packet& data);
  std::optional<Packet> lookup(int flow, std::int64_t segment);
  bool contains(int flow, std::int64_t segment) const;

  std::int64_t size() const { return static_cast<std::int64_t>(map_.size()); }
  std::int64_t capacity() const { return capacity_; }

 private:
  using Key = std::pair<int, std::int64_t>;
  std::int64_t capacity_;
  std::list<Key> order_;  // front = most recent
  std::map<Key, std::pair<Packet, std::list<Key>::iterator>> map_;
};

}  // namespace said
