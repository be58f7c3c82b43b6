#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hawkes/engine.hpp"
#include "hawkes/stats.hpp"

using namespace hawkes;

namespace {

std::vector<double> gaps(const EventStream& s) {
  std::vector<double> g;
  double prev = 0.0;
  for (double t : s.times()) {
    g.push_back(t - prev);
    prev = t;
  }
  return g;
}

}  // namespace

TEST_CASE("event stream validation and counting") {
  const EventStream s({0.5, 0.7, 3.0}, 10.0);
  CHECK(s.count(0.5, 0.7) == 2);
  CHECK(s.count(0.6, 2.0) == 1);
  CHECK(s.count_upto(3.0) == 3);
  CHECK(s.count_upto(0.4) == 0);
  CHECK_THROWS_AS(s.count(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(EventStream({0.7, 0.5}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(EventStream({0.5, 0.5}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(EventStream({0.0}, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(EventStream({11.0}, 10.0), std::invalid_argument);
}

TEST_CASE("Poisson baseline rate and exponential gaps") {
  const EventStream s = simulate(Kernel{}, 1.0, 1e5, 11, 0);
  const double rate = static_cast<double>(s.size()) / 1e5;
  CHECK(rate >= 0.99);
  CHECK(rate <= 1.01);
  CHECK(ks_exponential(gaps(s), 1.0).pass);
}

TEST_CASE("canceling kernel leaves every gap above A") {
  const Kernel g = canceling_kernel(2.0, 1.0);
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    const EventStream s = simulate(g, 2.0, 1000.0, 5, rep);
    const auto& ts = s.times();
    for (std::size_t i = 1; i < ts.size(); ++i) CHECK(ts[i] - ts[i - 1] > 1.0);
  }
}

TEST_CASE("delayed kernel: nothing between first jump + r and first jump + r + A") {
  const Kernel h = delayed_canceling_kernel(1.0, 0.5, 1.0);
  for (std::uint64_t rep = 0; rep < 500; ++rep) {
    const EventStream s = simulate(h, 1.0, 50.0, 21, rep);
    if (s.size() == 0) continue;
    const double u = s.times().front();
    CHECK(s.count(u + 0.5 + 1e-12, u + 1.5) == 0);
  }
}

TEST_CASE("coupling (h, h+) and (h, g) on the spec kernel") {
  const Kernel h = make_kernel({{0.0, 1.0, 0.5}, {1.0, 2.0, -3.0}});
  const Kernel g = canceling_kernel(1.0, 2.0);
  const std::vector<Kernel> ks{h, positive_part(h), g};
  std::size_t bad_interval = 0, bad_cumulative = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const CoupledRun run = simulate_coupled(ks, 1.0, 100.0, seed, 0);
    const auto& a = run.streams[0];
    const auto& b = run.streams[1];
    const auto& c = run.streams[2];
    for (int i = 0; i < 10; ++i) {
      for (int j = i; j <= 10; ++j) {
        if (a.count(10.0 * i, 10.0 * j) > b.count(10.0 * i, 10.0 * j)) ++bad_interval;
      }
    }
    for (const auto* st : {&a, &c}) {
      for (double t : st->times()) bad_cumulative += a.count_upto(t) < c.count_upto(t);
    }
  }
  CHECK(bad_interval == 0);
  CHECK(bad_cumulative == 0);
}

TEST_CASE("duplicated kernel gives identical streams") {
  const Kernel h = make_kernel({{0.0, 1.0, 0.5}, {1.0, 2.0, -3.0}});
  const std::vector<Kernel> ks{h, h};
  const CoupledRun run = simulate_coupled(ks, 1.0, 500.0, 3, 2);
  CHECK(run.streams[0] == run.streams[1]);
}

TEST_CASE("single-kernel simulate is the first stream of a coupled run with its positive part") {
  const Kernel h = make_kernel({{0.0, 0.5, 0.8}, {0.5, 1.5, -1.0}});
  const std::vector<Kernel> ks{h, positive_part(h)};
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    CHECK(simulate(h, 1.3, 200.0, 17, rep) == simulate_coupled(ks, 1.3, 200.0, 17, rep).streams[0]);
  }
}

TEST_CASE("determinism and candidate log replay") {
  const Kernel h = make_kernel({{0.0, 1.0, 0.5}});
  SimulationOptions opt;
  opt.record_candidates = true;
  const std::vector<Kernel> ks{h};
  const CoupledRun a = simulate_coupled(ks, 1.0, 300.0, 99, 7, opt);
  const CoupledRun b = simulate_coupled(ks, 1.0, 300.0, 99, 7, opt);
  CHECK(a.streams[0] == b.streams[0]);
  REQUIRE(a.driver.candidates.size() == b.driver.candidates.size());
  for (std::size_t i = 0; i < a.driver.candidates.size(); ++i) {
    CHECK(a.driver.candidates[i].time == b.driver.candidates[i].time);
    CHECK(a.driver.candidates[i].mark == b.driver.candidates[i].mark);
  }
  CHECK(simulate(h, 1.0, 300.0, 99, 8) != a.streams[0]);
}

TEST_CASE("intensity never exceeds the candidate bound and stays nonnegative") {
  const Kernel h = make_kernel({{0.0, 0.4, 0.9}, {0.4, 1.0, -2.0}, {1.0, 1.3, 0.6}});
  SimulationOptions opt;
  opt.record_candidates = true;
  const std::vector<Kernel> ks{h};
  const CoupledRun run = simulate_coupled(ks, 0.8, 400.0, 4, 0, opt);
  for (const auto& c : run.driver.candidates) {
    const double lam = intensity_at(h, 0.8, run.streams[0], c.time);
    CHECK(lam >= 0.0);
    CHECK(lam <= c.rate * (1.0 + 1e-12));
  }
}

TEST_CASE("pure inhibition keeps the intensity at or below lambda") {
  const Kernel h = make_kernel({{0.0, 0.3, -0.4}, {0.3, 1.0, -1.5}});
  const EventStream s = simulate(h, 1.5, 500.0, 8, 0);
  for (int k = 0; k < 5000; ++k) {
    const double t = 500.0 * (k + 0.5) / 5000.0;
    CHECK(intensity_at(h, 1.5, s, t) <= 1.5);
  }
}

TEST_CASE("runaway guard") {
  SimulationOptions opt;
  opt.max_events = 10;
  CHECK_THROWS_AS(simulate(make_kernel({{0.0, 1.0, 0.5}}), 5.0, 100.0, 1, 0, opt), std::runtime_error);
}

TEST_CASE("simulate rejects bad arguments") {
  CHECK_THROWS_AS(simulate(Kernel{}, 0.0, 10.0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate(Kernel{}, 1.0, -1.0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(simulate_coupled(std::span<const Kernel>{}, 1.0, 10.0, 1, 0), std::invalid_argument);
}
