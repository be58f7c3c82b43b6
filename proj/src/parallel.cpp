#include "hawkes/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr std::size_t kWindowBatch = 64;

}  // namespace

std::vector<std::size_t> replica_counts(const ReplicaPlan& plan, int threads) {
  std::vector<std::size_t> out(plan.count);
  parallel_for(plan.count, threads, [&](std::size_t i) {
    out[i] = simulate(plan.kernel, plan.lambda, plan.horizon, plan.seed, plan.first_replica + i).size();
  });
  return out;
}

std::vector<std::size_t> replica_counts_serial(const ReplicaPlan& plan) {
  std::vector<std::size_t> out;
  out.reserve(plan.count);
  for (std::size_t i = 0; i < plan.count; ++i) {
    out.push_back(simulate(plan.kernel, plan.lambda, plan.horizon, plan.seed, plan.first_replica + i).size());
  }
  return out;
}

std::vector<EventStream> simulate_replicas(const ReplicaPlan& plan, int threads) {
  std::vector<EventStream> out(plan.count);
  parallel_for(plan.count, threads, [&](std::size_t i) {
    out[i] = simulate(plan.kernel, plan.lambda, plan.horizon, plan.seed, plan.first_replica + i);
  });
  return out;
}

std::vector<EventStream> simulate_replicas_serial(const ReplicaPlan& plan) {
  std::vector<EventStream> out;
  out.reserve(plan.count);
  for (std::size_t i = 0; i < plan.count; ++i) {
    out.push_back(simulate(plan.kernel, plan.lambda, plan.horizon, plan.seed, plan.first_replica + i));
  }
  return out;
}

WindowSample sample_windows(const ReplicaPlan& plan, double window_length, std::size_t min_windows,
                            int threads) {
  WindowSample pooled;
  pooled.window_length = window_length;
  pooled.provenance = {plan.lambda, plan.kernel.describe(), plan.kernel.hash(), plan.seed, plan.first_replica};

  std::uint64_t next = plan.first_replica;
  while (pooled.size() < min_windows) {
    std::vector<WindowSample> batch(kWindowBatch);
    parallel_for(kWindowBatch, threads, [&](std::size_t i) {
      batch[i] = decompose(simulate(plan.kernel, plan.lambda, plan.horizon, plan.seed, next + i), window_length);
    });
    next += kWindowBatch;
    if (std::all_of(batch.begin(), batch.end(), [](const WindowSample& b) { return b.windows.empty(); })) {
      throw std::runtime_error("replica horizon too short: no renewal window closed");
    }
    for (const auto& b : batch) {
      pooled.windows.insert(pooled.windows.end(), b.windows.begin(), b.windows.end());
      pooled.horizon += b.horizon;
      pooled.discarded_tail_count += b.discarded_tail_count;
      if (pooled.size() >= min_windows) break;
    }
  }
  return pooled;
}

}  // namespace hawkes
