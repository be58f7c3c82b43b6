#include "hawkes/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hawkes/parallel.hpp"

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;

double borel_radius(double nu) { return nu - std::log(nu) - 1.0; }

}  // namespace

double alpha0(const Kernel& kernel, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("alpha0: lambda must be positive");
  const double nu = kernel.positive_l1();
  if (nu == 0.0) return lambda;
  return std::min(lambda, borel_radius(nu) / kernel.support_length());
}

BorelMgf borel_mgf(double nu, double theta, double tolerance) {
  if (!(nu > 0.0 && nu < 1.0)) throw std::invalid_argument("borel_mgf: nu must lie in (0, 1)");
  if (!(tolerance > 0.0)) throw std::invalid_argument("borel_mgf: tolerance must be positive");
  BorelMgf out;
  if (theta >= borel_radius(nu)) {
    out.value = kInf;
    out.diverged = true;
    return out;
  }
  constexpr std::size_t kCap = 50'000'000;
  const double log_nu = std::log(nu);
  double previous = kInf;
  for (std::size_t k = 1; k <= kCap; ++k) {
    const double kd = static_cast<double>(k);
    // e^{theta k} P(S = k), P(S = k) = e^{-k nu} (k nu)^{k-1} / k!
    const double term = std::exp(theta * kd - kd * nu + (kd - 1.0) * (std::log(kd) + log_nu) - std::lgamma(kd + 1.0));
    out.value += term;
    out.terms = k;
    if (term < tolerance && term <= previous) return out;
    previous = term;
  }
  out.diverged = true;
  out.value = kInf;
  return out;
}

Theta0 theta0(const Kernel& kernel, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("theta0: lambda must be positive");
  if (kernel.empty()) return {kInf, Theta0Kind::poisson};
  if (kernel.cancels_fully(lambda)) return {kInf, Theta0Kind::canceling};
  if (kernel.is_nonpositive()) {
    return {-std::log(-std::expm1(-lambda * kernel.support_length())), Theta0Kind::nonpositive};
  }
  const double nu = kernel.positive_l1();
  const double radius = borel_radius(nu);
  const double a0 = alpha0(kernel, lambda);
  auto admissible = [&](double theta) {
    if (!(theta < radius)) return false;
    const BorelMgf b = borel_mgf(nu, 2.0 * theta);
    return !b.diverged && lambda * (b.value - 1.0) < a0;
  };
  double lo = 0.0, hi = radius;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? lo : hi) = mid;
  }
  return {lo, Theta0Kind::borel};
}

CramerSolver::CramerSolver(LogMgfSurface surface, const CramerOptions& options)
    : surface_(std::move(surface)), threads_(options.threads) {
  grid_ = tabulate(surface_, default_box(surface_, options.half_width), options.grid_n, options.threads);
}

namespace {

struct Objective {
  const LogMgfSurface& surface;
  double a, b;

  double operator()(double x, double y) const {
    const double v = surface.value(x, y);
    return std::isfinite(v) ? a * x + b * y - v : -kInf;
  }
};

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

// Maximises a 1-D concave function on [lo, hi].
template <class F>
double golden_max(F&& f, double lo, double hi, double tol) {
  double c = hi - kGolden * (hi - lo), d = lo + kGolden * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kGolden * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kGolden * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

CramerResult CramerSolver::solve(double a, double b) const {
  const OptimBox& box = grid_.box;
  const Objective f{surface_, a, b};
  const double scale = 1.0 + std::abs(a) + std::abs(b);

  double x = 0.0, y = 0.0, fx = 0.0;  // the origin is always feasible with value 0
  for (std::size_t i = 0; i < grid_.n; ++i) {
    for (std::size_t j = 0; j < grid_.n; ++j) {
      const double v = grid_.at(i, j);
      if (!std::isfinite(v)) continue;
      const double cand = a * grid_.xs[i] + b * grid_.ys[j] - v;
      if (cand > fx) {
        fx = cand;
        x = grid_.xs[i];
        y = grid_.ys[j];
      }
    }
  }

  const double edge_x = 1e-12 * (box.x_hi - box.x_lo);
  const double edge_y = 1e-12 * (box.y_hi - box.y_lo);
  bool converged = false;
  for (int iter = 0; iter < 200; ++iter) {
    const MgfJet j = surface_.jet(x, y);
    const double gx = a - j.gx, gy = b - j.gy;
    const bool pinned_x = (x <= box.x_lo + edge_x && gx < 0.0) || (x >= box.x_hi - edge_x && gx > 0.0);
    const bool pinned_y = (y <= box.y_lo + edge_y && gy < 0.0) || (y >= box.y_hi - edge_y && gy > 0.0);
    const double px = pinned_x ? 0.0 : gx, py = pinned_y ? 0.0 : gy;
    if (std::hypot(px, py) <= 1e-11 * scale) {
      converged = true;
      break;
    }
    // Ascent direction: (H + mu I) d = g on the free coordinates.
    const double mu = 1e-12 * (1.0 + j.hxx + j.hyy);
    double dx = 0.0, dy = 0.0;
    if (!pinned_x && !pinned_y) {
      const double h11 = j.hxx + mu, h22 = j.hyy + mu, h12 = j.hxy;
      const double det = h11 * h22 - h12 * h12;
      if (det > 0.0) {
        dx = (h22 * px - h12 * py) / det;
        dy = (h11 * py - h12 * px) / det;
      }
    } else if (!pinned_x) {
      dx = px / (j.hxx + mu);
    } else {
      dy = py / (j.hyy + mu);
    }
    if (!std::isfinite(dx) || !std::isfinite(dy) || dx * px + dy * py <= 0.0) {
      dx = px;
      dy = py;
    }
    bool moved = false;
    for (double t = 1.0; t > 1e-18; t *= 0.5) {
      const double nx = clamp(x + t * dx, box.x_lo, box.x_hi);
      const double ny = clamp(y + t * dy, box.y_lo, box.y_hi);
      const double fn = f(nx, ny);
      if (fn >= fx + 1e-4 * (gx * (nx - x) + gy * (ny - y)) && fn >= fx) {
        moved = nx != x || ny != y;
        x = nx;
        y = ny;
        fx = fn;
        break;
      }
    }
    if (!moved) break;
  }

  if (!converged) {
    // Coordinate-wise golden section until the objective stops improving.
    for (int sweep = 0; sweep < 50; ++sweep) {
      const double before = fx;
      x = golden_max([&](double u) { return f(u, y); }, box.x_lo, box.x_hi, 1e-10 * (box.x_hi - box.x_lo));
      y = golden_max([&](double v) { return f(x, v); }, box.y_lo, box.y_hi, 1e-10 * (box.y_hi - box.y_lo));
      fx = std::max(fx, f(x, y));
      if (fx - before <= 1e-13 * (1.0 + std::abs(fx))) break;
    }
  }

  CramerResult out;
  out.x = x;
  out.y = y;
  out.value = std::max(fx, 0.0);
  const MgfJet j = surface_.jet(x, y);
  out.flagged = j.flagged;
  out.finite = std::isfinite(out.value);
  const double gx = a - j.gx, gy = b - j.gy;
  constexpr double kOutward = 1e-7;
  out.truncated = (x <= box.x_lo + edge_x && gx < -kOutward) || (x >= box.x_hi - edge_x && gx > kOutward) ||
                  (y <= box.y_lo + edge_y && gy < -kOutward) || (y >= box.y_hi - edge_y && gy > kOutward);
  return out;
}

CramerResult cramer_transform(const LogMgfSurface& surface, double a, double b, const CramerOptions& options) {
  return CramerSolver(surface, options).solve(a, b);
}

RateValue rate_J(const CramerSolver& solver, double z) {
  if (!(z > 0.0)) throw std::invalid_argument("rate_J: z must be positive");
  const double mean_tau = solver.surface().mean_tau();
  constexpr std::size_t kScan = 128;
  const double lo = std::log(1e-3 * mean_tau), hi = std::log(1e3 * mean_tau);

  auto evaluate = [&](double log_beta) {
    const double beta = std::exp(log_beta);
    const CramerResult c = solver.solve(1.0 / beta, z / beta);
    RateValue r;
    r.beta = beta;
    r.value = c.finite ? beta * c.value : kInf;
    r.finite = c.finite;
    r.truncated = c.truncated;
    r.flagged = c.flagged;
    return r;
  };

  std::vector<RateValue> scan(kScan);
  parallel_for(kScan, solver.threads(), [&](std::size_t i) {
    scan[i] = evaluate(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kScan - 1));
  });

  std::size_t k = kScan;
  for (std::size_t i = 0; i < kScan; ++i) {
    if (scan[i].finite && (k == kScan || scan[i].value < scan[k].value)) k = i;
  }
  if (k == kScan) {
    RateValue none;
    none.value = kInf;
    none.finite = false;
    return none;
  }

  RateValue best = scan[k];
  const double step = (hi - lo) / static_cast<double>(kScan - 1);
  double a = lo + step * static_cast<double>(k == 0 ? 0 : k - 1);
  double b = lo + step * static_cast<double>(std::min(k + 1, kScan - 1));
  auto keep = [&](const RateValue& r) {
    if (r.finite && r.value < best.value) best = r;
    return r.finite ? r.value : kInf;
  };
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = keep(evaluate(c)), fd = keep(evaluate(d));
  while (b - a > 1e-12) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = keep(evaluate(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = keep(evaluate(d));
    }
  }
  return best;
}

RateValue rate_J(const LogMgfSurface& surface, double z) { return rate_J(CramerSolver(surface), z); }

std::string to_string(RateProvenance p) {
  switch (p) {
    case RateProvenance::closed_form: return "closed-form";
    case RateProvenance::numeric_analytic: return "numeric-analytic";
    case RateProvenance::numeric_empirical: return "numeric-empirical";
  }
  return "unknown";
}

RateCurve rate_curve(const std::function<double(double)>& closed_form, const std::vector<double>& grid) {
  RateCurve c;
  c.provenance = RateProvenance::closed_form;
  c.z = grid;
  for (double z : grid) {
    c.J.push_back(closed_form(z));
    c.flag.push_back(0);
  }
  return c;
}

RateCurve rate_curve(const CramerSolver& solver, const std::vector<double>& grid, int threads) {
  RateCurve c;
  c.provenance = solver.surface().source() == SurfaceSource::empirical ? RateProvenance::numeric_empirical
                                                                      : RateProvenance::numeric_analytic;
  c.z = grid;
  c.J.resize(grid.size());
  c.flag.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const RateValue r = rate_J(solver, grid[i]);
    c.J[i] = r.value;
    c.flag[i] = r.truncated || r.flagged || !r.finite;
  });
  return c;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("linear_grid: need step > 0 and hi >= lo");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
  return g;
}

namespace {

// inf of J over the half-line starting at `from` and running away from the
// mean in direction `dir`. A convex J is monotone there, so the endpoint is
// the answer; the short outward scan only guards against a numerically
// non-convex curve.
double inf_on(const std::function<double(double)>& J, double from, double dir, double step) {
  double best = J(from), last = best;
  for (int i = 1; i <= 16; ++i) {
    const double z = from + dir * step * i;
    if (z <= 0.0) break;
    const double v = J(z);
    best = std::min(best, v);
    if (v > last) break;
    last = v;
  }
  return best;
}

}  // namespace

DeviationBounds deviation_bounds(const std::function<double(double)>& J, double m, double a, double theta0,
                                 double kappa, double kappa_prime) {
  if (!(a > 0.0)) throw std::invalid_argument("deviation_bounds: a must be positive");
  if (!(m > 0.0)) throw std::invalid_argument("deviation_bounds: m must be positive");
  const bool linear = std::isfinite(theta0);
  if (linear) {
    if (!(kappa > 0.0 && kappa < 1.0 && kappa_prime > 0.0 && kappa_prime < 1.0) ||
        std::abs(kappa + 2.0 * kappa_prime - 1.0) > 1e-12) {
      throw std::invalid_argument("deviation_bounds: need kappa, kappa' in (0,1) with kappa + 2 kappa' = 1");
    }
  } else {
    kappa = 1.0;
  }

  DeviationBounds d;
  const double step = 0.25 * std::max(kappa * a, 0.1 * m);
  d.above_rate = inf_on(J, m + kappa * a, 1.0, step);
  const double down = m - kappa * a;
  d.below_rate = down > 0.0 ? inf_on(J, down, -1.0, step) : kInf;
  d.above_linear = linear ? kappa_prime * theta0 * a : kInf;
  d.below_linear = linear ? (1.0 - kappa) * theta0 * a : kInf;
  d.above = std::min(d.above_rate, d.above_linear);
  d.below = std::min(d.below_rate, d.below_linear);
  return d;
}

}  // namespace hawkes
