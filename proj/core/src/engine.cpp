#include "said/engine.hpp"

namespace said {

void Engine::schedule(TimeUs t, Action action) {
  if (t < now_) {
    throw std::logic_error("schedule into the past: t=" + std::to_string(t) +
                           " now=" + std::to_string(now_));
  }
  queue_.push(Event{t, next_seq_++, std::move(action)});
}

void Engine::run_until(TimeUs t_end) {
  while (!queue_.empty() && queue_.top().time <= t_end) {
    // Moving the action out before pop keeps re-entrant schedule() safe.
    Event ev = std::move(const_cast<Event&>(queue_.top()));
    queue_.pop();
    now_ = ev.time;
    ev.action();
  }
  if (now_ < t_end) now_ = t_end;
}

}  // namespace said
