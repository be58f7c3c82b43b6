#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hawkes/kernel.hpp"

namespace hawkes {

/// Jump times of one realized process on (0, horizon], strictly increasing.
class EventStream {
 public:
  EventStream() = default;
  EventStream(std::vector<double> times, double horizon);

  const std::vector<double>& times() const noexcept { return times_; }
  double horizon() const noexcept { return horizon_; }
  std::size_t size() const noexcept { return times_.size(); }

  /// N([s, t]) for 0 <= s <= t.
  std::size_t count(double s, double t) const;
  /// N_t = N([0, t]).
  std::size_t count_upto(double t) const;

  friend bool operator==(const EventStream&, const EventStream&) = default;

 private:
  std::vector<double> times_;
  double horizon_ = 0.0;
};

/// One consulted point of the planar driving field: candidate time, mark in
/// (0, 1), and the dominating rate in force at that time.
struct Candidate {
  double time;
  double mark;
  double rate;
};

struct DriverState {
  std::uint64_t seed = 0;
  std::uint64_t replica_index = 0;
  std::vector<Candidate> candidates;  // filled only when recording is enabled
};

struct SimulationOptions {
  std::size_t max_events = 100'000'000;
  bool record_candidates = false;
};

struct CoupledRun {
  std::vector<EventStream> streams;
  DriverState driver;
};

/// Exact draw of the Hawkes process with intensity (lambda + sum h(t - U_i))+
/// on (0, horizon], empty initial condition.
EventStream simulate(const Kernel& kernel, double lambda, double horizon, std::uint64_t seed,
                     std::uint64_t replica_index, const SimulationOptions& options = {});

/// Thins every kernel from one shared candidate stream. The dominating rate is
/// driven by a hidden process whose kernel is the positive envelope of all
/// inputs, so e.g. (h, h+) and (h, -lambda 1_[0,L(h)]) both couple pathwise.
CoupledRun simulate_coupled(std::span<const Kernel> kernels, double lambda, double horizon,
                            std::uint64_t seed, std::uint64_t replica_index,
                            const SimulationOptions& options = {});

/// Lambda(t-) reconstructed from a realized stream.
double intensity_at(const Kernel& kernel, double lambda, const EventStream& stream, double t);

}  // namespace hawkes
