#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hawkes/kernel.hpp"
#include "hawkes/surface.hpp"

namespace hawkes {

/// Exponential-moment radius for tau: min(lambda, (nu - ln nu - 1) / L), nu = ||h+||_1.
double alpha0(const Kernel& kernel, double lambda);

struct BorelMgf {
  double value = 0.0;
  bool diverged = false;
  std::size_t terms = 0;
};

/// E exp(theta S) for S ~ Borel(nu), the total progeny of a Poisson(nu)
/// branching tree. Diverges for theta >= nu - ln nu - 1.
BorelMgf borel_mgf(double nu, double theta, double tolerance = 1e-16);

enum class Theta0Kind { canceling, poisson, nonpositive, borel };

struct Theta0 {
  double value = 0.0;
  Theta0Kind kind = Theta0Kind::borel;
};

/// Exponential-moment radius for W. Infinite when every window holds one jump.
Theta0 theta0(const Kernel& kernel, double lambda);

struct CramerResult {
  double value = 0.0;
  double x = 0.0, y = 0.0;  // maximiser
  bool truncated = false;   // maximiser pinned to the optimisation box
  bool flagged = false;     // maximiser outside the surface's reliable region
  bool finite = true;
};

struct CramerOptions {
  double half_width = 40.0;
  std::size_t grid_n = 64;
  int threads = 0;
};

/// Lambda*(a, b) = sup_{x,y} {a x + b y - ln E e^{x tau + y W}} over a box.
///
/// The surface is tabulated once on a coarse grid; each solve starts from the
/// best grid point and refines with a projected, damped Newton ascent
/// (coordinate golden-section is the fallback).
class CramerSolver {
 public:
  explicit CramerSolver(LogMgfSurface surface, const CramerOptions& options = {});

  CramerResult solve(double a, double b) const;

  const LogMgfSurface& surface() const noexcept { return surface_; }
  const OptimBox& box() const noexcept { return grid_.box; }
  int threads() const noexcept { return threads_; }

 private:
  LogMgfSurface surface_;
  SurfaceGrid grid_;
  int threads_ = 0;
};

CramerResult cramer_transform(const LogMgfSurface& surface, double a, double b,
                              const CramerOptions& options = {});

struct RateValue {
  double value = 0.0;
  double beta = 0.0;  // minimising time scale
  bool truncated = false;
  bool flagged = false;
  bool finite = true;
};

/// J(z) = inf_{beta > 0} beta Lambda*(1/beta, z/beta), scanned over 128
/// log-spaced beta in [1e-3, 1e3] * E tau and refined by golden section.
RateValue rate_J(const CramerSolver& solver, double z);
RateValue rate_J(const LogMgfSurface& surface, double z);

enum class RateProvenance { closed_form, numeric_analytic, numeric_empirical };

std::string to_string(RateProvenance p);

struct RateCurve {
  RateProvenance provenance = RateProvenance::closed_form;
  std::vector<double> z;
  std::vector<double> J;
  std::vector<char> flag;  // truncated or outside the reliable region
};

RateCurve rate_curve(const std::function<double(double)>& closed_form, const std::vector<double>& grid);
RateCurve rate_curve(const CramerSolver& solver, const std::vector<double>& grid, int threads = 0);

/// Evenly spaced grid lo, lo + step, ... <= hi (inclusive up to rounding).
std::vector<double> linear_grid(double lo, double hi, double step);

struct DeviationBounds {
  double above = 0.0;          // min of the two terms below
  double above_rate = 0.0;     // inf_{z >= m + kappa a} J
  double above_linear = 0.0;   // kappa' theta0 a
  double below = 0.0;
  double below_rate = 0.0;     // inf_{0 < z <= m - kappa a} J
  double below_linear = 0.0;   // (1 - kappa) theta0 a
};

/// Upper exponents for P(N_t / t - m >= a) and P(N_t / t - m <= -a). With an
/// infinite theta0 the linear terms are infinite and kappa is taken as 1.
/// Requires kappa + 2 kappa' = 1 with both in (0, 1) when theta0 is finite.
DeviationBounds deviation_bounds(const std::function<double(double)>& J, double m, double a, double theta0,
                                 double kappa, double kappa_prime);

}  // namespace hawkes
