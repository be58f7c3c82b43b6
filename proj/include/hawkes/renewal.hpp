#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hawkes/engine.hpp"

namespace hawkes {

/// One regeneration cycle. A window opens at `start` (the previous closure,
/// or 0) and closes exactly L after its last jump.
struct RenewalWindow {
  double start = 0.0;
  double close = 0.0;
  std::vector<double> relative_times;  // jump times minus start

  double tau() const noexcept { return close - start; }
  std::size_t w() const noexcept { return relative_times.size(); }
  double first_offset() const noexcept { return relative_times.front(); }
};

/// Where a sample came from. Purely descriptive.
struct SampleProvenance {
  double lambda = 0.0;
  std::string kernel;  // Kernel::describe()
  std::string kernel_hash;
  std::uint64_t seed = 0;
  std::uint64_t replica_index = 0;
};

struct WindowSample {
  std::vector<RenewalWindow> windows;
  double window_length = 0.0;  // L used for closure
  double horizon = 0.0;        // total observed time (sum over streams when pooled)
  std::size_t discarded_tail_count = 0;
  SampleProvenance provenance;

  std::size_t size() const noexcept { return windows.size(); }
  std::vector<double> taus() const;
  std::vector<double> counts() const;
};

/// Splits a stream at the first instants t with no jump in (t - L, t].
/// Windows whose closure falls after the horizon are dropped; their jumps are
/// counted in discarded_tail_count.
WindowSample decompose(const EventStream& stream, double window_length);

/// U^i_1 - S_{i-1} for every window.
std::vector<double> first_offsets(const WindowSample& sample);

/// Pairs (t, N_t - N^_t) where N^_t counts jumps of windows closed by t.
std::vector<std::pair<double, std::size_t>> residual_trace(const EventStream& stream,
                                                           const WindowSample& sample,
                                                           const std::vector<double>& t_grid);

/// Concatenates the windows back into absolute jump times (tail excluded).
std::vector<double> reconstruct_times(const WindowSample& sample);

/// Appends `more` to `into`; windows keep their own start/close times.
void append_sample(WindowSample& into, const WindowSample& more);

}  // namespace hawkes
