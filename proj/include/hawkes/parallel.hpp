#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

#include <omp.h>

#include "hawkes/engine.hpp"
#include "hawkes/renewal.hpp"

namespace hawkes {

/// Replica r of a plan is simulated with (seed, first_replica + r). Results
/// are placed by replica index, so they do not depend on the thread count.
struct ReplicaPlan {
  Kernel kernel;
  double lambda = 1.0;
  double horizon = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t first_replica = 0;
  std::size_t count = 0;
};

/// Runs body(i) for i in [0, n) on `threads` OpenMP threads (<= 0: runtime
/// default). The first exception thrown by any iteration is rethrown.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<long long>(n);
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team) if (team != 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// N_horizon for every replica.
std::vector<std::size_t> replica_counts(const ReplicaPlan& plan, int threads);
std::vector<std::size_t> replica_counts_serial(const ReplicaPlan& plan);

std::vector<EventStream> simulate_replicas(const ReplicaPlan& plan, int threads);
std::vector<EventStream> simulate_replicas_serial(const ReplicaPlan& plan);

/// Pools completed windows from independent replicas (each of length
/// plan.horizon, decomposed with window_length) in replica order until at
/// least `min_windows` are collected. Batches have a fixed size so the result
/// is independent of `threads`.
WindowSample sample_windows(const ReplicaPlan& plan, double window_length, std::size_t min_windows,
                            int threads);

}  // namespace hawkes
