#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rtctl/rng.hpp"
#include "rtctl/sim_engine.hpp"

namespace rtctl::plant {

using sim::RequestId;
using sim::SimTime;

struct WorkloadConfig {
  double mean_interarrival = 0.2;  // seconds
  double mean_service = 60.0;      // seconds

  /// Throws ConfigError unless both means are strictly positive.
  void validate() const;
  [[nodiscard]] double offered_load() const noexcept { return mean_service / mean_interarrival; }
};

struct PendingRequest {
  RequestId id = 0;
  SimTime arrival = 0.0;
};

struct ServiceEntry {
  RequestId id = 0;
  SimTime arrival = 0.0;
  SimTime entered_service = 0.0;

  /// Time spent waiting in the pending queue. Service time is not included.
  [[nodiscard]] double response_time() const noexcept { return entered_service - arrival; }
};

/// Admission-controlled worker pool with one unbounded FIFO pending queue.
///
/// Lowering max_requests never preempts: requests already in service run to
/// completion and new dispatches wait until busy_workers drops below the cap.
class WorkerPool {
 public:
  explicit WorkerPool(int max_requests = 200);

  void set_max_requests(int max_requests);
  [[nodiscard]] int max_requests() const noexcept { return max_requests_; }
  [[nodiscard]] int busy_workers() const noexcept { return busy_; }
  [[nodiscard]] std::size_t queue_length() const noexcept { return pending_.size(); }
  [[nodiscard]] const std::deque<PendingRequest>& pending() const noexcept { return pending_; }

  void enqueue(RequestId id, SimTime arrival);

  /// Moves queue heads into service while a worker is free. on_entry is called
  /// once per dispatched request, in FIFO order.
  template <typename OnEntry>
  std::size_t dispatch_if_free(SimTime now, OnEntry&& on_entry) {
    std::size_t started = 0;
    while (busy_ < max_requests_ && !pending_.empty()) {
      const PendingRequest head = pending_.front();
      pending_.pop_front();
      ++busy_;
      ++started;
      on_entry(ServiceEntry{head.id, head.arrival, now});
    }
    return started;
  }

  /// A worker finished its request.
  void complete();

 private:
  std::deque<PendingRequest> pending_;
  int busy_ = 0;
  int max_requests_;
};

/// One measurement-interval record; the sensor reading handed to controllers.
struct IntervalSample {
  int k = 0;
  SimTime window_end = 0.0;
  int applied_max_requests = 0;
  double mean_response = 0.0;  // y(k), seconds
  std::size_t n_observed = 0;
  double error = 0.0;          // e(k) = reference - mean_response
};

/// Averages the response times of entries whose service start lies in
/// (window_start, window_end]. An empty window holds previous_response.
IntervalSample sample_window(std::span<const ServiceEntry> entries, int k, double reference,
                             SimTime window_start, SimTime window_end, int applied_max_requests,
                             double previous_response);

/// Workload generator plus worker pool driven by the event kernel. Arrivals and
/// service times come from two independent streams of the same master seed.
class ServerModel {
 public:
  using EntryObserver = std::function<void(const ServiceEntry&)>;
  using TickHandler = std::function<void(const sim::SimEvent&)>;

  ServerModel(const WorkloadConfig& workload, std::uint64_t seed, int initial_max_requests);

  ServerModel(const ServerModel&) = delete;
  ServerModel& operator=(const ServerModel&) = delete;

  /// Schedules the first arrival at t = 0.
  void start();

  void set_entry_observer(EntryObserver observer) { on_entry_ = std::move(observer); }
  void set_tick_handler(TickHandler handler) { on_tick_ = std::move(handler); }

  /// Changes the cap and dispatches immediately if the cap was raised.
  void set_max_requests(int max_requests);

  sim::Simulator& simulator() noexcept { return sim_; }
  [[nodiscard]] const sim::Simulator& simulator() const noexcept { return sim_; }
  [[nodiscard]] const WorkerPool& pool() const noexcept { return pool_; }
  [[nodiscard]] const WorkloadConfig& workload() const noexcept { return workload_; }

  [[nodiscard]] std::uint64_t arrivals() const noexcept { return arrivals_; }
  [[nodiscard]] std::uint64_t completions() const noexcept { return completions_; }
  [[nodiscard]] std::uint64_t service_entries() const noexcept { return entries_; }

 private:
  void handle(const sim::SimEvent& event);
  void on_arrival(SimTime now);
  void on_completion(SimTime now);
  void dispatch(SimTime now);

  WorkloadConfig workload_;
  sim::Simulator sim_;
  sim::RngStream interarrival_;
  sim::RngStream service_;
  WorkerPool pool_;
  EntryObserver on_entry_;
  TickHandler on_tick_;
  std::uint64_t arrivals_ = 0;
  std::uint64_t completions_ = 0;
  std::uint64_t entries_ = 0;
  bool started_ = false;
};

/// A plant advanced one measurement interval at a time.
class IntervalPlant {
 public:
  virtual ~IntervalPlant() = default;
  /// Applies max_requests for interval k (1-based, consecutive) and returns
  /// the sample measured at its end.
  virtual IntervalSample run_interval(int max_requests, double reference) = 0;
};

struct IntervalTiming {
  double measurement_interval = 180.0;  // seconds
  double sampling_window = 60.0;        // final sub-window, seconds
  std::size_t queue_guard = 1'000'000;  // divergence threshold on queue length
};

/// The queueing simulation sampled once per measurement interval.
class SimulatedServer final : public IntervalPlant {
 public:
  SimulatedServer(const WorkloadConfig& workload, const IntervalTiming& timing, std::uint64_t seed,
                  int initial_max_requests);

  /// Throws DivergenceError if the queue exceeds timing.queue_guard.
  IntervalSample run_interval(int max_requests, double reference) override;

  [[nodiscard]] const ServerModel& model() const noexcept { return model_; }
  [[nodiscard]] int intervals_run() const noexcept { return k_; }

 private:
  ServerModel model_;
  IntervalTiming timing_;
  std::vector<ServiceEntry> window_entries_;
  bool window_open_ = false;
  int k_ = 0;
  double previous_response_ = 0.0;
};

}  // namespace rtctl::plant
