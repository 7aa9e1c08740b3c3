#include "said/content_store.hpp"

namespace said {

void ContentStore::insert(const Packet& data) {
  if (capacity_ <= 0) return;
  const Key key{data.flow, data.segment};
  auto it = map_.find(key);
  if (it != map_.end()) {
    order_.erase(it->second.second);
    order_.push_front(key);
    it->second = {data, order_.begin()};
    return;
  }
  if (size() >= capacity_) {
    const Key victim = order_.back();
    order_.pop_back();
    map_.erase(victim);
  }
  order_.push_front(key);
  map_.emplace(key, std::make_pair(data, order_.begin()));
}

std::optional<Packet> ContentStore::lookup(int flow, std::int64_t segment) {
  const Key key{flow, segment};
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  order_.erase(it->second.second);
  order_.push_front(key);
  it->second.second = order_.begin();
  return it->second.first;
}

bool ContentStore::contains(int flow, std::int64_t segment) const {
  return map_.count({flow, segment}) > 0;
}

}  // namespace said
