#include "hawkes/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double oracle_cancel_rate(double lambda, double A, double z) {
  if (z < 0.0) return kInf;
  const double room = 1.0 - z * A;
  if (!(room > 0.0)) return kInf;
  if (z == 0.0) return lambda;
  return lambda * room - z + z * std::log(z / (lambda * room));
}

double CancelOracle::J(double z) const { return oracle_cancel_rate(lambda, A, z); }

CancelOracle oracle_cancel(double lambda, double A) {
  if (!(lambda > 0.0)) throw std::invalid_argument("oracle_cancel: lambda must be positive");
  if (!(A >= 0.0)) throw std::invalid_argument("oracle_cancel: A must be >= 0");
  CancelOracle o;
  o.lambda = lambda;
  o.A = A;
  o.mean_tau = A + 1.0 / lambda;
  o.var_tau = 1.0 / (lambda * lambda);
  o.m = lambda / (1.0 + lambda * A);
  o.sigma2 = o.m * o.m / (lambda * lambda * o.mean_tau);
  o.alpha0 = lambda;
  return o;
}

DelayedOracle oracle_delayed(double lambda, double r, double A) {
  if (!(lambda > 0.0)) throw std::invalid_argument("oracle_delayed: lambda must be positive");
  if (!(r >= 0.0)) throw std::invalid_argument("oracle_delayed: r must be >= 0");
  if (!(A > r)) throw std::invalid_argument("oracle_delayed: requires A > r");
  DelayedOracle o;
  o.lambda = lambda;
  o.r = r;
  o.A = A;
  const double lr = lambda * r;
  const double survive = std::exp(-lr);
  const double hit = -std::expm1(-lr);  // 1 - e^{-lambda r}

  o.atom_mass = survive;
  o.mean_w = 1.0 + lr;
  o.var_w = lr;
  o.mean_x = r - hit / lambda;
  o.var_x = r * r - 2.0 * o.mean_x / lambda - o.mean_x * o.mean_x;
  o.mean_tau = 2.0 * r + A + survive / lambda;
  o.var_tau = 1.0 / (lambda * lambda) + o.var_x;
  // Cov(X, K): E[X K] from E[X | K = k] = r k / (k + 1), summed in closed form.
  o.cov_tau_w = hit / lambda - r * survive;
  o.m = o.mean_w / o.mean_tau;
  o.sigma2 = (o.var_w - 2.0 * o.m * o.cov_tau_w + o.m * o.m * o.var_tau) / o.mean_tau;
  o.alpha0 = lambda;
  return o;
}

double LinearOracle::I(double x) const {
  if (x < 0.0) return kInf;
  if (x == 0.0) return lambda;
  return x * std::log(x / (lambda + x * h_l1)) - x * (1.0 - h_l1) + lambda;
}

LinearOracle oracle_linear(double lambda, double h_l1) {
  if (!(lambda > 0.0)) throw std::invalid_argument("oracle_linear: lambda must be positive");
  if (!(h_l1 >= 0.0 && h_l1 < 1.0)) throw std::invalid_argument("oracle_linear: need 0 <= ||h||_1 < 1");
  LinearOracle o;
  o.lambda = lambda;
  o.h_l1 = h_l1;
  o.mu = lambda / (1.0 - h_l1);
  o.sigma2 = lambda / std::pow(1.0 - h_l1, 3);
  return o;
}

}  // namespace hawkes
