#include "hawkes/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

#include "hawkes/rng.hpp"

namespace hawkes {

EventStream::EventStream(std::vector<double> times, double horizon)
    : times_(std::move(times)), horizon_(horizon) {
  if (!(horizon_ > 0.0)) throw std::invalid_argument("event stream horizon must be positive");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!(times_[i] > 0.0) || times_[i] > horizon_) {
      throw std::invalid_argument("event time outside (0, horizon]");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw std::invalid_argument("event times must be strictly increasing");
    }
  }
}

std::size_t EventStream::count(double s, double t) const {
  if (s > t) throw std::invalid_argument("count requires s <= t");
  auto lo = std::lower_bound(times_.begin(), times_.end(), s);
  auto hi = std::upper_bound(times_.begin(), times_.end(), t);
  return static_cast<std::size_t>(hi - lo);
}

std::size_t EventStream::count_upto(double t) const {
  return static_cast<std::size_t>(std::upper_bound(times_.begin(), times_.end(), t) - times_.begin());
}

namespace {

struct ProcessState {
  const Kernel* kernel;
  std::deque<double> recent;  // own events younger than L(h)
  std::vector<double> times;

  double intensity(double lambda, double t) {
    const double L = kernel->support_length();
    while (!recent.empty() && t - recent.front() >= L) recent.pop_front();
    double acc = lambda;
    for (double u : recent) acc += kernel->eval(t - u);
    return acc > 0.0 ? acc : 0.0;
  }
};

}  // namespace

CoupledRun simulate_coupled(std::span<const Kernel> kernels, double lambda, double horizon,
                            std::uint64_t seed, std::uint64_t replica_index,
                            const SimulationOptions& options) {
  if (kernels.empty()) throw std::invalid_argument("simulate_coupled needs at least one kernel");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be positive and finite");

  const Kernel envelope = positive_envelope(kernels);
  const double env_sup = envelope.positive_sup();
  const double env_len = envelope.support_length();

  std::vector<ProcessState> procs;
  procs.reserve(kernels.size());
  for (const Kernel& k : kernels) procs.push_back({&k, {}, {}});
  ProcessState driver{&envelope, {}, {}};

  // Departure instants of driver events from the window used for the
  // dominating rate. Rounded up one ulp so a departed event can never still
  // contribute through eval(t - u).
  std::deque<double> departures;

  CoupledRun run;
  run.driver.seed = seed;
  run.driver.replica_index = replica_index;

  CounterRng rng(seed, replica_index);
  const double inf = std::numeric_limits<double>::infinity();
  double t = 0.0;
  std::size_t accepted = 0;

  for (;;) {
    const double bound = lambda + env_sup * static_cast<double>(departures.size());
    const double candidate = t + rng.exponential(bound);
    const double next_departure = departures.empty() ? inf : departures.front();

    if (candidate >= next_departure) {
      // Structural change first; the pending gap is discarded (memoryless).
      if (next_departure > horizon) break;
      t = next_departure;
      departures.pop_front();
      continue;
    }
    if (candidate > horizon) break;

    t = candidate;
    const double mark = rng.uniform();
    const double level = mark * bound;
    if (options.record_candidates) run.driver.candidates.push_back({t, mark, bound});

    const double driver_rate = driver.intensity(lambda, t);
    if (driver_rate > bound * (1.0 + 1e-12)) {
      throw std::logic_error("dominating rate below driver intensity at t=" + std::to_string(t));
    }
    for (ProcessState& p : procs) {
      const double rate = p.intensity(lambda, t);
      if (rate > driver_rate * (1.0 + 1e-12)) {
        throw std::logic_error("coupled process intensity exceeds dominating process at t=" +
                               std::to_string(t));
      }
      if (level <= rate) {
        p.times.push_back(t);
        p.recent.push_back(t);
      }
    }
    if (level <= driver_rate) {
      driver.recent.push_back(t);
      if (env_sup > 0.0) departures.push_back(std::nextafter(t + env_len, inf));
      if (++accepted > options.max_events) {
        throw std::runtime_error("event cap exceeded (" + std::to_string(options.max_events) + ")");
      }
    }
  }

  run.streams.reserve(procs.size());
  for (ProcessState& p : procs) run.streams.emplace_back(std::move(p.times), horizon);
  return run;
}

EventStream simulate(const Kernel& kernel, double lambda, double horizon, std::uint64_t seed,
                     std::uint64_t replica_index, const SimulationOptions& options) {
  auto run = simulate_coupled(std::span<const Kernel>(&kernel, 1), lambda, horizon, seed,
                              replica_index, options);
  return std::move(run.streams.front());
}

double intensity_at(const Kernel& kernel, double lambda, const EventStream& stream, double t) {
  double acc = lambda;
  const auto& ts = stream.times();
  auto end = std::lower_bound(ts.begin(), ts.end(), t);
  for (auto it = end; it != ts.begin();) {
    --it;
    const double lag = t - *it;
    if (lag >= kernel.support_length()) break;
    acc += kernel.eval(lag);
  }
  return acc > 0.0 ? acc : 0.0;
}

}  // namespace hawkes
