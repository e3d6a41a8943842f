#include "rtctl/sim_engine.hpp"

#include <sstream>

namespace rtctl::sim {

std::string_view to_string(EventKind kind) noexcept {
  switch (kind) {
    case EventKind::Arrival: return "Arrival";
    case EventKind::ServiceCompletion: return "ServiceCompletion";
    case EventKind::MeasurementTick: return "MeasurementTick";
    case EventKind::ControlTick: return "ControlTick";
    case EventKind::EndOfRun: return "EndOfRun";
  }
  return "Unknown";
}

void EventCalendar::push(const SimEvent& event) { heap_.push(Entry{event, next_seq_++}); }

const SimEvent& EventCalendar::top() const {
  if (heap_.empty()) throw std::out_of_range("EventCalendar::top on empty calendar");
  return heap_.top().event;
}

SimEvent EventCalendar::pop() {
  if (heap_.empty()) throw std::out_of_range("EventCalendar::pop on empty calendar");
  SimEvent event = heap_.top().event;
  heap_.pop();
  return event;
}

void EventCalendar::clear() noexcept {
  heap_ = {};
  next_seq_ = 0;
}

void Simulator::schedule(const SimEvent& event) {
  if (!(event.fire_at >= clock_)) {
    std::ostringstream msg;
    msg << "cannot schedule " << to_string(event.kind) << " at t=" << event.fire_at
        << " before the current clock t=" << clock_;
    throw SchedulingError(msg.str());
  }
  calendar_.push(event);
}

bool Simulator::step() {
  if (calendar_.empty()) return false;
  dispatch(calendar_.pop());
  return true;
}

void Simulator::run_until(SimTime end) {
  while (!calendar_.empty() && calendar_.top().fire_at <= end) {
    dispatch(calendar_.pop());
  }
  if (end > clock_) clock_ = end;
}

void Simulator::dispatch(const SimEvent& event) {
  clock_ = event.fire_at;
  ++dispatched_;
  if (handler_) handler_(event);
}

}  // namespace rtctl::sim
