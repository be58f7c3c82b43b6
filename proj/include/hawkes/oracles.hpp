#pragma once

#include <limits>

namespace hawkes {

/// Canceling kernel -lambda 1_[0,A): W = 1 and tau = A + Exp(lambda).
struct CancelOracle {
  double lambda = 0.0, A = 0.0;
  double mean_w = 1.0, var_w = 0.0;
  double mean_tau = 0.0, var_tau = 0.0;
  double m = 0.0, sigma2 = 0.0;
  double theta0 = std::numeric_limits<double>::infinity();
  double alpha0 = 0.0;

  /// Closed-form rate on 0 <= z < 1/A (J(0) = lambda); +inf elsewhere.
  double J(double z) const;
};

CancelOracle oracle_cancel(double lambda, double A);
double oracle_cancel_rate(double lambda, double A, double z);

/// Delayed canceling kernel -lambda 1_[r, r+A), 0 <= r < A.
///
/// tau = r + A + U + X and W = 1 + K, where U ~ Exp(lambda), K ~ Poisson(lambda r)
/// counts the arrivals in the first r after a window's first jump and X is the
/// last of them (0 if none). X has an atom e^{-lambda r} at 0 and density
/// lambda e^{-lambda (r - s)} on (0, r).
struct DelayedOracle {
  double lambda = 0.0, r = 0.0, A = 0.0;
  double mean_w = 0.0, var_w = 0.0;
  double mean_x = 0.0, var_x = 0.0;
  double mean_tau = 0.0, var_tau = 0.0;
  double cov_tau_w = 0.0;
  double atom_mass = 0.0;  // P(X = 0) = P(W = 1)
  double m = 0.0, sigma2 = 0.0;
  double theta0 = std::numeric_limits<double>::infinity();
  double alpha0 = 0.0;
};

DelayedOracle oracle_delayed(double lambda, double r, double A);

/// Nonnegative kernel with ||h||_1 = h_l1 < 1.
struct LinearOracle {
  double lambda = 0.0, h_l1 = 0.0;
  double mu = 0.0, sigma2 = 0.0;

  /// x ln(x / (lambda + x h_l1)) - x (1 - h_l1) + lambda, for x >= 0.
  double I(double x) const;
};

LinearOracle oracle_linear(double lambda, double h_l1);

}  // namespace hawkes
