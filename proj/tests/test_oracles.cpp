#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hawkes/estimators.hpp"
#include "hawkes/oracles.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/stats.hpp"

using namespace hawkes;

TEST_CASE("canceling oracle") {
  const CancelOracle o = oracle_cancel(2.0, 1.0);
  CHECK(o.m == doctest::Approx(2.0 / 3.0));
  CHECK(o.sigma2 == doctest::Approx(2.0 / 27.0));
  CHECK(o.mean_tau == doctest::Approx(1.5));
  CHECK(o.var_tau == doctest::Approx(0.25));
  CHECK(std::isinf(o.theta0));
  CHECK(o.alpha0 == 2.0);
  CHECK(std::abs(o.J(2.0 / 3.0)) < 1e-15);
  CHECK(std::isinf(o.J(1.0)));
  CHECK(std::isinf(o.J(1.2)));
  CHECK(o.J(0.0) == 2.0);  // no jump at all: e^{-lambda t}
  CHECK(std::isinf(o.J(-0.1)));

  // The derivative changes sign at m.
  const double h = 1e-3;
  CHECK(o.J(2.0 / 3.0 - 2 * h) > o.J(2.0 / 3.0 - h));
  CHECK(o.J(2.0 / 3.0 + 2 * h) > o.J(2.0 / 3.0 + h));

  const CancelOracle p = oracle_cancel(1.0, 0.0);
  CHECK(p.m == 1.0);
  CHECK(p.sigma2 == 1.0);
  CHECK(p.J(1.0) == doctest::Approx(0.0));
  CHECK(p.J(1.5) == doctest::Approx(0.108198).epsilon(1e-6));
  CHECK(std::isfinite(p.J(50.0)));

  CHECK_THROWS_AS(oracle_cancel(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("delayed oracle examples") {
  const DelayedOracle o = oracle_delayed(1.0, 0.5, 1.0);
  CHECK(o.mean_w == 1.5);
  CHECK(o.mean_tau == doctest::Approx(2.606531).epsilon(1e-6));
  CHECK(o.m == doctest::Approx(0.575478).epsilon(1e-6));
  CHECK(o.atom_mass == doctest::Approx(0.606531).epsilon(1e-6));
  CHECK(std::isinf(o.theta0));
  CHECK_THROWS_AS(oracle_delayed(1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(oracle_delayed(1.0, -0.1, 1.0), std::invalid_argument);
}

TEST_CASE("delayed oracle reduces to the canceling one as r -> 0") {
  for (double lambda : {0.5, 2.0}) {
    const CancelOracle c = oracle_cancel(lambda, 1.0);
    for (double r : {0.0, 1e-10}) {
      const DelayedOracle d = oracle_delayed(lambda, r, 1.0);
      CHECK(std::abs(d.mean_w - c.mean_w) < 1e-9);
      CHECK(std::abs(d.var_w - c.var_w) < 1e-9);
      CHECK(std::abs(d.mean_tau - c.mean_tau) < 1e-9);
      CHECK(std::abs(d.var_tau - c.var_tau) < 1e-9);
      CHECK(std::abs(d.m - c.m) < 1e-9);
      CHECK(std::abs(d.sigma2 - c.sigma2) < 1e-9);
      CHECK(std::abs(d.cov_tau_w) < 1e-9);
    }
  }
}

TEST_CASE("delayed oracle moments by independent routes") {
  const double lambda = 1.3, r = 0.8, A = 1.1;
  const DelayedOracle o = oracle_delayed(lambda, r, A);

  // Cov(X, K) from E[X | K = k] = r k / (k + 1) and Poisson weights.
  const double mu = lambda * r;
  double exk = 0.0, ex = 0.0, pk = std::exp(-mu);
  for (int k = 0; k < 200; ++k) {
    if (k > 0) pk *= mu / k;
    exk += pk * k * r * k / (k + 1.0);
    ex += pk * r * k / (k + 1.0);
  }
  CHECK(ex == doctest::Approx(o.mean_x).epsilon(1e-12));
  CHECK(exk - ex * mu == doctest::Approx(o.cov_tau_w).epsilon(1e-12));

  // Var X from the mixed law: atom at 0 plus density lambda e^{-lambda (r - s)} on (0, r).
  const int n = 20000;
  double m1 = 0.0, m2 = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double s = r * i / n;
    const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double f = lambda * std::exp(-lambda * (r - s));
    m1 += wgt * s * f;
    m2 += wgt * s * s * f;
  }
  m1 *= r / (3.0 * n);
  m2 *= r / (3.0 * n);
  CHECK(m1 == doctest::Approx(o.mean_x).epsilon(1e-10));
  CHECK(m2 - m1 * m1 == doctest::Approx(o.var_x).epsilon(1e-10));
}

TEST_CASE("delayed oracle variances against simulation") {
  // lambda = 2 separates a 1/lambda^2 exponential variance from 1/lambda.
  const double lambda = 2.0, r = 0.3, A = 1.0;
  const DelayedOracle o = oracle_delayed(lambda, r, A);
  const ReplicaPlan plan{delayed_canceling_kernel(lambda, r, A), lambda, 1000.0, 55, 0, 1};
  const WindowSample s = sample_windows(plan, r + A, 400000, 0);
  const LimitEstimates e = lln_estimate(s);
  CHECK(e.var_tau == doctest::Approx(o.var_tau).epsilon(0.02));
  CHECK(e.var_w == doctest::Approx(o.var_w).epsilon(0.02));
  CHECK(e.cov_tau_w == doctest::Approx(o.cov_tau_w).epsilon(0.05));
  CHECK(e.mean_tau == doctest::Approx(o.mean_tau).epsilon(0.003));
  CHECK(e.sigma2_hat == doctest::Approx(o.sigma2).epsilon(0.03));
  CHECK(std::abs(e.m_hat - o.m) <= 3.0 * e.se_m_hat);
}

TEST_CASE("linear oracle") {
  const LinearOracle o = oracle_linear(1.0, 0.5);
  CHECK(o.mu == 2.0);
  CHECK(o.sigma2 == 8.0);
  CHECK(o.I(2.0) == doctest::Approx(0.0));
  CHECK(o.I(1.0) > 0.0);
  CHECK(o.I(3.0) > 0.0);
  const LinearOracle p = oracle_linear(1.7, 0.0);
  CHECK(p.mu == 1.7);
  CHECK(p.sigma2 == 1.7);
  CHECK(p.I(1.7) == doctest::Approx(0.0));
  CHECK_THROWS_AS(oracle_linear(1.0, 1.0), std::invalid_argument);
}
