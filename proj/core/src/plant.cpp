#include "rtctl/plant.hpp"

#include <sstream>

#include "rtctl/errors.hpp"

namespace rtctl::plant {

void WorkloadConfig::validate() const {
  if (!(mean_interarrival > 0.0)) throw ConfigError("mean_interarrival must be positive");
  if (!(mean_service > 0.0)) throw ConfigError("mean_service must be positive");
}

WorkerPool::WorkerPool(int max_requests) : max_requests_(max_requests) {
  if (max_requests < 1) throw ConfigError("max_requests must be a positive integer");
}

void WorkerPool::set_max_requests(int max_requests) {
  if (max_requests < 1) throw ConfigError("max_requests must be a positive integer");
  max_requests_ = max_requests;
}

void WorkerPool::enqueue(RequestId id, SimTime arrival) { pending_.push_back({id, arrival}); }

void WorkerPool::complete() {
  if (busy_ == 0) throw std::logic_error("service completion with no busy worker");
  --busy_;
}

IntervalSample sample_window(std::span<const ServiceEntry> entries, int k, double reference,
                             SimTime window_start, SimTime window_end, int applied_max_requests,
                             double previous_response) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& entry : entries) {
    if (entry.entered_service > window_start && entry.entered_service <= window_end) {
      sum += entry.response_time();
      ++n;
    }
  }
  IntervalSample sample;
  sample.k = k;
  sample.window_end = window_end;
  sample.applied_max_requests = applied_max_requests;
  sample.n_observed = n;
  sample.mean_response = n > 0 ? sum / static_cast<double>(n) : previous_response;
  sample.error = reference - sample.mean_response;
  return sample;
}

ServerModel::ServerModel(const WorkloadConfig& workload, std::uint64_t seed, int initial_max_requests)
    : workload_(workload),
      interarrival_(seed, sim::StreamId::Interarrival),
      service_(seed, sim::StreamId::Service),
      pool_(initial_max_requests) {
  workload_.validate();
  sim_.set_handler([this](const sim::SimEvent& event) { handle(event); });
}

void ServerModel::start() {
  if (started_) throw std::logic_error("ServerModel::start called twice");
  started_ = true;
  sim_.schedule(sim_.now(), sim::EventKind::Arrival);
}

void ServerModel::set_max_requests(int max_requests) {
  pool_.set_max_requests(max_requests);
  dispatch(sim_.now());
}

void ServerModel::handle(const sim::SimEvent& event) {
  switch (event.kind) {
    case sim::EventKind::Arrival:
      on_arrival(event.fire_at);
      break;
    case sim::EventKind::ServiceCompletion:
      on_completion(event.fire_at);
      break;
    case sim::EventKind::MeasurementTick:
    case sim::EventKind::ControlTick:
    case sim::EventKind::EndOfRun:
      if (on_tick_) on_tick_(event);
      break;
  }
}

void ServerModel::on_arrival(SimTime now) {
  pool_.enqueue(arrivals_++, now);
  dispatch(now);
  sim_.schedule(now + interarrival_.exponential(workload_.mean_interarrival), sim::EventKind::Arrival);
}

void ServerModel::on_completion(SimTime now) {
  pool_.complete();
  ++completions_;
  dispatch(now);
}

void ServerModel::dispatch(SimTime now) {
  pool_.dispatch_if_free(now, [&](const ServiceEntry& entry) {
    ++entries_;
    if (on_entry_) on_entry_(entry);
    sim_.schedule(now + service_.exponential(workload_.mean_service), sim::EventKind::ServiceCompletion,
                  entry.id);
  });
}

SimulatedServer::SimulatedServer(const WorkloadConfig& workload, const IntervalTiming& timing,
                                 std::uint64_t seed, int initial_max_requests)
    : model_(workload, seed, initial_max_requests), timing_(timing) {
  if (!(timing_.measurement_interval > 0.0)) throw ConfigError("measurement interval must be positive");
  if (!(timing_.sampling_window > 0.0) || timing_.sampling_window > timing_.measurement_interval) {
    throw ConfigError("sampling window must lie in (0, measurement interval]");
  }
  model_.set_entry_observer([this](const ServiceEntry& entry) {
    if (window_open_) window_entries_.push_back(entry);
  });
  model_.set_tick_handler([this](const sim::SimEvent& event) {
    if (event.kind == sim::EventKind::MeasurementTick) {
      window_open_ = true;
      window_entries_.clear();
    }
  });
  model_.start();
}

IntervalSample SimulatedServer::run_interval(int max_requests, double reference) {
  ++k_;
  const SimTime end = timing_.measurement_interval * k_;
  const SimTime window_start = end - timing_.sampling_window;

  model_.set_max_requests(max_requests);
  auto& sim = model_.simulator();
  sim.schedule(window_start, sim::EventKind::MeasurementTick);
  sim.schedule(end, sim::EventKind::ControlTick);
  sim.run_until(end);

  const auto queued = model_.pool().queue_length();
  if (queued > timing_.queue_guard) {
    std::ostringstream msg;
    msg << "pending queue diverged: " << queued << " requests queued at t=" << end << " (interval " << k_
        << ", max_requests=" << max_requests << ", guard=" << timing_.queue_guard << ")";
    throw DivergenceError(msg.str());
  }

  IntervalSample sample = sample_window(window_entries_, k_, reference, window_start, end, max_requests,
                                        previous_response_);
  previous_response_ = sample.mean_response;
  window_entries_.clear();
  window_open_ = false;
  return sample;
}

}  // namespace rtctl::plant
