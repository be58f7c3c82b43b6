#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hawkes/engine.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/renewal.hpp"
#include "hawkes/stats.hpp"

using namespace hawkes;

TEST_CASE("hand-traced decomposition") {
  const EventStream s({0.5, 0.7, 3.0}, 10.0);
  const WindowSample w = decompose(s, 1.0);
  REQUIRE(w.size() == 2);
  CHECK(w.windows[0].tau() == doctest::Approx(1.7));
  CHECK(w.windows[0].w() == 2);
  CHECK(w.windows[0].first_offset() == doctest::Approx(0.5));
  CHECK(w.windows[1].tau() == doctest::Approx(2.3));
  CHECK(w.windows[1].w() == 1);
  CHECK(w.windows[1].first_offset() == doctest::Approx(1.3));
  CHECK(w.discarded_tail_count == 0);

  const auto off = first_offsets(w);
  REQUIRE(off.size() == 2);
  CHECK(off[0] == doctest::Approx(0.5));
  CHECK(off[1] == doctest::Approx(1.3));
}

TEST_CASE("empty stream and unconfirmed tail") {
  const WindowSample none = decompose(EventStream({}, 10.0), 1.0);
  CHECK(none.size() == 0);
  CHECK(none.discarded_tail_count == 0);
  CHECK_THROWS_AS(first_offsets(none), std::invalid_argument);

  const WindowSample tail = decompose(EventStream({9.5}, 10.0), 1.0);
  CHECK(tail.size() == 0);
  CHECK(tail.discarded_tail_count == 1);

  CHECK_THROWS_AS(decompose(EventStream({1.0}, 10.0), 0.0), std::invalid_argument);
}

TEST_CASE("gap exactly L keeps the window open; closure exactly at the horizon counts") {
  const WindowSample w = decompose(EventStream({1.0, 2.0, 5.0}, 6.0), 1.0);
  REQUIRE(w.size() == 2);
  CHECK(w.windows[0].w() == 2);
  CHECK(w.windows[1].close == 6.0);
}

TEST_CASE("residual trace") {
  const EventStream s({0.5, 0.7, 3.0}, 10.0);
  const WindowSample w = decompose(s, 1.0);
  const auto r = residual_trace(s, w, {0.4, 1.0, 1.7, 3.5, 4.0});
  CHECK(r[0].second == 0);
  CHECK(r[1].second == 2);
  CHECK(r[2].second == 0);
  CHECK(r[3].second == 1);
  CHECK(r[4].second == 0);
  CHECK_THROWS_AS(residual_trace(s, w, {11.0}), std::invalid_argument);
}

TEST_CASE("structural invariants on simulated paths") {
  const Kernel h = make_kernel({{0.0, 1.0, 0.5}, {1.0, 2.0, -3.0}});
  const double L = h.support_length();
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const EventStream s = simulate(h, 1.0, 2000.0, 31, rep);
    const WindowSample w = decompose(s, L);
    const auto& ts = s.times();
    std::size_t total = 0;
    double total_tau = 0.0;
    for (const auto& win : w.windows) {
      CHECK(win.tau() == doctest::Approx(win.relative_times.back() + L));
      CHECK(s.count(win.start, win.close) == win.w());
      // Gaps inside a window are at most L; the gap that closes it exceeds L.
      for (std::size_t i = total + 1; i < total + win.w(); ++i) CHECK(ts[i] - ts[i - 1] <= L);
      const std::size_t last = total + win.w() - 1;
      if (last + 1 < ts.size()) CHECK(ts[last + 1] - ts[last] > L);
      total += win.w();
      total_tau += win.tau();
    }
    CHECK(total + w.discarded_tail_count == s.size());
    CHECK(total_tau <= s.horizon());

    // Reconstruction: windows followed by the tail reproduce the stream.
    auto back = reconstruct_times(w);
    back.insert(back.end(), ts.end() - static_cast<long>(w.discarded_tail_count), ts.end());
    REQUIRE(back.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(back[i] == doctest::Approx(ts[i]).epsilon(1e-12));

    std::vector<double> grid;
    for (int k = 1; k <= 100; ++k) grid.push_back(20.0 * k);
    for (const auto& [t, resid] : residual_trace(s, w, grid)) {
      std::size_t in_progress = w.discarded_tail_count;
      for (const auto& win : w.windows) {
        if (win.start <= t && t < win.close) in_progress = win.w();
      }
      CHECK(resid <= in_progress);
    }
  }
}

TEST_CASE("canceling windows: W = 1 and tau - A exponential") {
  const ReplicaPlan plan{canceling_kernel(2.0, 1.0), 2.0, 1000.0, 3, 0, 1};
  const WindowSample w = sample_windows(plan, 1.0, 100000, 0);
  REQUIRE(w.size() >= 100000);
  std::vector<double> excess;
  for (const auto& win : w.windows) {
    CHECK(win.w() == 1);
    excess.push_back(win.tau() - 1.0);
  }
  CHECK(ks_exponential(excess, 2.0).pass);
  CHECK(ks_exponential(first_offsets(w), 2.0).pass);
}

TEST_CASE("regeneration: lag-1 correlations and half-sample KS") {
  const Kernel h = make_kernel({{0.0, 1.0, 0.5}, {1.0, 2.0, -3.0}});
  const ReplicaPlan plan{h, 1.0, 2000.0, 13, 0, 1};
  const WindowSample w = sample_windows(plan, h.support_length(), 100000, 0);
  const auto tau = w.taus();
  const auto cnt = w.counts();
  const double band = 3.0 / std::sqrt(static_cast<double>(tau.size()));
  CHECK(std::abs(lag1_correlation(tau)) <= band);
  CHECK(std::abs(lag1_correlation(cnt)) <= band);
  const std::size_t half = tau.size() / 2;
  CHECK(ks_two_sample(std::span(tau).first(half), std::span(tau).subspan(half)).pass);
  CHECK(ks_exponential(first_offsets(w), 1.0).pass);
}

TEST_CASE("pure inhibition: geometric tail of W") {
  const double lambda = 2.0, L = 1.0;
  const Kernel h = make_kernel({{0.0, L, -0.5}});
  const ReplicaPlan plan{h, lambda, 2000.0, 41, 0, 1};
  const WindowSample w = sample_windows(plan, L, 100000, 0);
  const double n = static_cast<double>(w.size());
  const double q = 1.0 - std::exp(-lambda * L);
  for (std::size_t k = 1; k <= 20; ++k) {
    double above = 0.0;
    for (const auto& win : w.windows) above += win.w() > k;
    const double p = above / n;
    const double bound = std::pow(q, static_cast<double>(k));
    const double ci = std::sqrt(std::max(p * (1 - p), bound * (1 - bound)) / n);
    CHECK(p <= bound + 3.0 * ci);
  }
}
