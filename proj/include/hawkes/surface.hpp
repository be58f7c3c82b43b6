#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "hawkes/renewal.hpp"

namespace hawkes {

enum class SurfaceSource { analytic, empirical };

/// ln E exp(x tau + y W) with its gradient and Hessian at one point.
struct MgfJet {
  double value = 0.0;
  double gx = 0.0, gy = 0.0;
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
  bool finite = true;
  bool flagged = false;  // outside the trustworthy region (empirical tails)
};

/// Joint log-MGF of a renewal pair (tau, W). Immutable; safe to share.
class LogMgfSurface {
 public:
  using Evaluator = std::function<MgfJet(double x, double y)>;

  LogMgfSurface(SurfaceSource source, std::string label, Evaluator eval, double x_max, double y_max);

  MgfJet jet(double x, double y) const;
  double value(double x, double y) const { return jet(x, y).value; }

  SurfaceSource source() const noexcept { return source_; }
  const std::string& label() const noexcept { return label_; }
  /// Safe domain is x < x_max, y < y_max.
  double x_max() const noexcept { return x_max_; }
  double y_max() const noexcept { return y_max_; }
  double mean_tau() const noexcept { return mean_tau_; }
  double mean_w() const noexcept { return mean_w_; }

 private:
  SurfaceSource source_;
  std::string label_;
  Evaluator eval_;
  double x_max_;
  double y_max_;
  double mean_tau_ = 0.0;
  double mean_w_ = 0.0;
};

/// tau = A + Exp(lambda), W = 1. A = 0 gives the Poisson-window surface.
LogMgfSurface canceling_surface(double lambda, double A);

/// tau = r + A + U + X, W = 1 + K with U ~ Exp(lambda) independent of (X, K),
/// K ~ Poisson(lambda r) and X the last arrival of that Poisson stream in
/// (0, r) (0 if none). Closed form:
///   E exp(xX + yK) = e^{-lambda r} (1 + lambda e^y (e^{c r} - 1) / c),  c = x + lambda e^y.
LogMgfSurface delayed_surface(double lambda, double r, double A);

/// Same joint transform by quadrature of the conditional law of X given K,
/// summing the K series term by term. Independent route used for checking.
double delayed_joint_log_mgf_quadrature(double lambda, double r, double A, double x, double y);

struct EmpiricalOptions {
  std::size_t min_windows = 1000;
  /// Known exponential-moment radius for tau (e.g. alpha0); x >= cap is flagged.
  double x_cap = std::numeric_limits<double>::infinity();
  /// A point is flagged when its largest summand exceeds this share.
  double max_share = 0.5;
};

/// ln((1/n) sum exp(x tau_i + y W_i)), evaluated by log-sum-exp.
LogMgfSurface empirical_log_mgf(const WindowSample& sample, const EmpiricalOptions& options = {});

struct OptimBox {
  double x_lo = -40.0, x_hi = 40.0;
  double y_lo = -40.0, y_hi = 40.0;
};

/// Default optimisation box clipped to the surface's safe domain.
OptimBox default_box(const LogMgfSurface& surface, double half_width = 40.0);

/// Surface values on an n x n lattice over a box. Row-major in x.
struct SurfaceGrid {
  OptimBox box;
  std::size_t n = 0;
  std::vector<double> xs, ys;
  std::vector<double> values;
  std::vector<char> flagged;

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

SurfaceGrid tabulate(const LogMgfSurface& surface, const OptimBox& box, std::size_t n, int threads = 0);
SurfaceGrid tabulate_serial(const LogMgfSurface& surface, const OptimBox& box, std::size_t n);

}  // namespace hawkes
