#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hawkes/kernel.hpp"

using namespace hawkes;

TEST_CASE("canceling kernel from a single negative segment") {
  const Kernel g = make_kernel({{0.0, 1.0, -2.0}});
  CHECK(g.support_length() == 1.0);
  CHECK(g.positive_l1() == 0.0);
  CHECK(g.positive_sup() == 0.0);
  CHECK(g.cancels_fully(2.0));
  CHECK_FALSE(g.cancels_fully(2.5));
  CHECK(g == canceling_kernel(2.0, 1.0));
  CHECK(g.eval(0.5) == -2.0);
}

TEST_CASE("empty kernel is the Poisson case") {
  const Kernel h = make_kernel({});
  CHECK(h.empty());
  CHECK(h.support_length() == 0.0);
  CHECK(h.positive_l1() == 0.0);
  CHECK(h.eval(0.0) == 0.0);
  CHECK(canceling_kernel(1.0, 0.0).empty());
}

TEST_CASE("delayed canceling kernel") {
  const Kernel h = make_kernel({{0.5, 1.5, -1.0}});
  CHECK(h.support_length() == 1.5);
  CHECK(h == delayed_canceling_kernel(1.0, 0.5, 1.0));
  CHECK(h.eval(0.2) == 0.0);
  CHECK(h.eval(0.5) == -1.0);
  CHECK(h.eval(1.5) == 0.0);
  CHECK_FALSE(h.cancels_fully(1.0));
}

TEST_CASE("eval outside the support is zero") {
  const Kernel h = make_kernel({{0.0, 1.0, 0.5}, {1.0, 2.0, -3.0}});
  CHECK(h.eval(h.support_length() + 1.0) == 0.0);
  CHECK(h.eval(-0.1) == 0.0);
  CHECK(h.eval(1.0) == -3.0);  // half-open segments
  CHECK(h.eval(0.999999) == 0.5);
}

TEST_CASE("construction rejects invalid segments") {
  CHECK_THROWS_AS(make_kernel({{0.0, 1.0, 0.5}, {0.5, 2.0, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel({{0.0, 1.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel({{0.0, 2.0, 0.6}}), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel({{-0.1, 1.0, 0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel({{1.0, 1.0, 0.1}}), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel({{0.0, INFINITY, -1.0}}), std::invalid_argument);
}

TEST_CASE("segments are sorted on construction") {
  const Kernel h = make_kernel({{1.0, 2.0, -3.0}, {0.0, 1.0, 0.5}});
  REQUIRE(h.segments().size() == 2);
  CHECK(h.segments()[0].start == 0.0);
  CHECK(h.l1() == doctest::Approx(3.5));
  CHECK(h.integral() == doctest::Approx(-2.5));
}

TEST_CASE("positive part examples") {
  CHECK(positive_part(canceling_kernel(2.0, 1.0)).empty());
  const Kernel h = make_kernel({{0.0, 1.0, 0.5}, {1.0, 2.0, -3.0}});
  CHECK(positive_part(h) == make_kernel({{0.0, 1.0, 0.5}}));
  const Kernel p = make_kernel({{0.0, 1.0, 0.9}});
  CHECK(positive_part(p) == p);
}

TEST_CASE("positive part agrees pointwise and in L1 on random kernels") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> width(0.05, 0.6), value(-2.0, 0.6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Segment> segs;
    double t = 0.0;
    double mass = 0.0;
    for (int i = 0; i < 5; ++i) {
      t += 0.1 * width(gen);
      const double w = width(gen);
      double v = value(gen);
      if (v > 0.0 && mass + v * w >= 0.95) v = -v;
      if (v > 0.0) mass += v * w;
      segs.push_back({t, t + w, v});
      t += w;
    }
    const Kernel h(segs);
    const Kernel hp = positive_part(h);
    CHECK(hp.positive_l1() == doctest::Approx(h.positive_l1()).epsilon(1e-14));
    CHECK(hp.support_length() <= h.support_length());
    for (int k = 0; k < 200; ++k) {
      const double s = h.support_length() * (k + 0.5) / 200.0;
      CHECK(hp.eval(s) == std::max(h.eval(s), 0.0));
    }
  }
}

TEST_CASE("eval is constant inside a segment") {
  const Kernel h = make_kernel({{0.2, 0.7, 0.4}, {0.7, 1.3, -1.5}});
  for (const auto& s : h.segments()) {
    const double v = h.eval(s.start);
    for (int k = 1; k < 50; ++k) CHECK(h.eval(s.start + (s.end - s.start) * k / 50.0) == v);
  }
}

TEST_CASE("positive envelope is the pointwise max of positive parts") {
  const Kernel a = make_kernel({{0.0, 1.0, 0.3}, {1.0, 2.0, -1.0}});
  const Kernel b = make_kernel({{0.5, 1.5, 0.5}});
  const Kernel c = make_kernel({{0.0, 3.0, -2.0}});
  const std::vector<Kernel> ks{a, b, c};
  const Kernel env = positive_envelope(ks);
  for (int k = 0; k < 400; ++k) {
    const double t = 3.0 * k / 400.0;
    const double want = std::max({0.0, a.eval(t), b.eval(t), c.eval(t)});
    CHECK(env.eval(t) == want);
  }
}

TEST_CASE("hash distinguishes kernels and is stable") {
  const Kernel a = make_kernel({{0.0, 1.0, 0.5}});
  const Kernel b = make_kernel({{0.0, 1.0, 0.5000001}});
  CHECK(a.hash() == make_kernel({{0.0, 1.0, 0.5}}).hash());
  CHECK(a.hash() != b.hash());
  CHECK(a.hash().size() == 16);
}
