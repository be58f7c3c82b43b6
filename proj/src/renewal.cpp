#include "hawkes/renewal.hpp"

#include <algorithm>
#include <stdexcept>

namespace hawkes {

std::vector<double> WindowSample::taus() const {
  std::vector<double> out;
  out.reserve(windows.size());
  for (const auto& w : windows) out.push_back(w.tau());
  return out;
}

std::vector<double> WindowSample::counts() const {
  std::vector<double> out;
  out.reserve(windows.size());
  for (const auto& w : windows) out.push_back(static_cast<double>(w.w()));
  return out;
}

WindowSample decompose(const EventStream& stream, double window_length) {
  if (!(window_length > 0.0)) throw std::invalid_argument("window length must be positive");

  WindowSample sample;
  sample.window_length = window_length;
  sample.horizon = stream.horizon();

  const auto& ts = stream.times();
  double start = 0.0;
  std::size_t first = 0;  // index of the open window's first jump

  auto emit = [&](std::size_t end_index) {
    RenewalWindow w;
    w.start = start;
    w.close = ts[end_index - 1] + window_length;
    w.relative_times.reserve(end_index - first);
    for (std::size_t j = first; j < end_index; ++j) w.relative_times.push_back(ts[j] - start);
    start = w.close;
    first = end_index;
    sample.windows.push_back(std::move(w));
  };

  for (std::size_t i = 1; i < ts.size(); ++i) {
    // A gap of exactly L keeps the window open: the new jump lies in (t-L, t].
    if (ts[i] - ts[i - 1] > window_length) emit(i);
  }
  if (first < ts.size()) {
    if (ts.back() + window_length <= stream.horizon()) {
      emit(ts.size());
    } else {
      sample.discarded_tail_count = ts.size() - first;
    }
  }
  return sample;
}

std::vector<double> first_offsets(const WindowSample& sample) {
  if (sample.windows.empty()) throw std::invalid_argument("first_offsets on an empty sample");
  std::vector<double> out;
  out.reserve(sample.windows.size());
  for (const auto& w : sample.windows) out.push_back(w.first_offset());
  return out;
}

std::vector<std::pair<double, std::size_t>> residual_trace(const EventStream& stream,
                                                           const WindowSample& sample,
                                                           const std::vector<double>& t_grid) {
  std::vector<double> closes;
  std::vector<std::size_t> cumulative;
  closes.reserve(sample.windows.size());
  std::size_t acc = 0;
  for (const auto& w : sample.windows) {
    acc += w.w();
    closes.push_back(w.close);
    cumulative.push_back(acc);
  }

  std::vector<std::pair<double, std::size_t>> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (t > stream.horizon()) throw std::invalid_argument("grid time beyond horizon");
    const std::size_t n_t = stream.count_upto(t);
    const auto closed = static_cast<std::size_t>(
        std::upper_bound(closes.begin(), closes.end(), t) - closes.begin());
    const std::size_t n_hat = closed == 0 ? 0 : cumulative[closed - 1];
    out.emplace_back(t, n_t - n_hat);
  }
  return out;
}

std::vector<double> reconstruct_times(const WindowSample& sample) {
  std::vector<double> out;
  for (const auto& w : sample.windows) {
    for (double r : w.relative_times) out.push_back(w.start + r);
  }
  return out;
}

void append_sample(WindowSample& into, const WindowSample& more) {
  if (into.windows.empty() && into.horizon == 0.0) {
    into.window_length = more.window_length;
    into.provenance = more.provenance;
  }
  into.windows.insert(into.windows.end(), more.windows.begin(), more.windows.end());
  into.horizon += more.horizon;
  into.discarded_tail_count += more.discarded_tail_count;
}

}  // namespace hawkes
