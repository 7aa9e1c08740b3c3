#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "said/time.hpp"

namespace said {

// Deterministic discrete-event scheduler. Events run in (time, sequence)
// order; the sequence number is a monotone tie break assigned at schedule
// time, so same-timestamp events run in scheduling order.
class Engine {
 public:
  using Action = std::function<void()>;

  TimeUs now() const { return now_; }

  // Throws std::logic_error when t < now(): scheduling into the past is a
  // simulation bug, never a runtime condition.
  void schedule(TimeUs t, Action action);
  void schedule_in(TimeUs delay, Action action) { schedule(now_ + delay, std::move(action)); }

  // Drains all events with time <= t_end. The clock ends at t_end even if
  // the queue empties earlier.
  void run_until(TimeUs t_end);

  bool empty() const { return queue_.empty(); }
  std::size_t pending() const { return queue_.size(); }

 private:
  struct Event {
    TimeUs time;
    std::uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  TimeUs now_ = 0;
  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

}  // namespace said
