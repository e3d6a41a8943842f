#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace rtctl::sim {

/// Simulated time in seconds. Every duration in the library uses this unit.
using SimTime = double;

using RequestId = std::uint64_t;

enum class EventKind : std::uint8_t {
  Arrival,
  ServiceCompletion,
  MeasurementTick,
  ControlTick,
  EndOfRun,
};

std::string_view to_string(EventKind kind) noexcept;

struct SimEvent {
  SimTime fire_at = 0.0;
  EventKind kind = EventKind::Arrival;
  std::optional<RequestId> payload;
};

/// Raised when an event is scheduled before the current clock.
class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Time-ordered future event list. Events with equal fire_at are dispatched in
/// insertion order.
class EventCalendar {
 public:
  void push(const SimEvent& event);
  [[nodiscard]] const SimEvent& top() const;
  SimEvent pop();
  [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }
  void clear() noexcept;

 private:
  struct Entry {
    SimEvent event;
    std::uint64_t seq;
  };
  struct Later {
    bool operator()(const Entry& lhs, const Entry& rhs) const noexcept {
      if (lhs.event.fire_at != rhs.event.fire_at) return lhs.event.fire_at > rhs.event.fire_at;
      return lhs.seq > rhs.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

/// Single-threaded discrete-event kernel: a clock plus an event calendar.
/// Dispatched events are handed to the installed handler, which may schedule
/// further events.
class Simulator {
 public:
  using Handler = std::function<void(const SimEvent&)>;

  Simulator() = default;
  explicit Simulator(Handler handler) : handler_(std::move(handler)) {}

  void set_handler(Handler handler) { handler_ = std::move(handler); }

  [[nodiscard]] SimTime now() const noexcept { return clock_; }
  [[nodiscard]] bool has_pending() const noexcept { return !calendar_.empty(); }
  [[nodiscard]] std::size_t pending() const noexcept { return calendar_.size(); }
  [[nodiscard]] std::uint64_t dispatched() const noexcept { return dispatched_; }

  /// Throws SchedulingError if event.fire_at < now().
  void schedule(const SimEvent& event);
  void schedule(SimTime fire_at, EventKind kind, std::optional<RequestId> payload = std::nullopt) {
    schedule(SimEvent{fire_at, kind, payload});
  }

  /// Dispatches the earliest pending event. Returns false if none is pending.
  bool step();

  /// Dispatches every event with fire_at <= end, then leaves the clock at end.
  void run_until(SimTime end);

 private:
  void dispatch(const SimEvent& event);

  EventCalendar calendar_;
  Handler handler_;
  SimTime clock_ = 0.0;
  std::uint64_t dispatched_ = 0;
};

}  // namespace rtctl::sim
