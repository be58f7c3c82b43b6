#include "hawkes/surface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hawkes/parallel.hpp"

namespace hawkes {

LogMgfSurface::LogMgfSurface(SurfaceSource source, std::string label, Evaluator eval, double x_max,
                             double y_max)
    : source_(source), label_(std::move(label)), eval_(std::move(eval)), x_max_(x_max), y_max_(y_max) {
  const MgfJet origin = eval_(0.0, 0.0);
  mean_tau_ = origin.gx;
  mean_w_ = origin.gy;
}

MgfJet LogMgfSurface::jet(double x, double y) const {
  MgfJet j = eval_(x, y);
  if (!(x < x_max_) || !(y < y_max_)) j.flagged = true;
  if (!std::isfinite(j.value)) j.finite = false;
  return j;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MgfJet infinite_jet() {
  MgfJet j;
  j.value = kInf;
  j.finite = false;
  j.flagged = true;
  return j;
}

// ln(lambda / (lambda - x)) and derivatives: log-MGF of Exp(lambda).
struct ExpPart {
  double value, d1, d2;
};

ExpPart exponential_part(double lambda, double x) {
  const double gap = lambda - x;
  return {std::log(lambda) - std::log(gap), 1.0 / gap, 1.0 / (gap * gap)};
}

}  // namespace

LogMgfSurface canceling_surface(double lambda, double A) {
  if (!(lambda > 0.0)) throw std::invalid_argument("canceling_surface: lambda must be positive");
  if (!(A >= 0.0)) throw std::invalid_argument("canceling_surface: A must be >= 0");
  auto eval = [lambda, A](double x, double y) {
    if (!(x < lambda)) return infinite_jet();
    const ExpPart e = exponential_part(lambda, x);
    MgfJet j;
    j.value = y + x * A + e.value;
    j.gx = A + e.d1;
    j.gy = 1.0;
    j.hxx = e.d2;
    return j;
  };
  return LogMgfSurface(SurfaceSource::analytic, "canceling", eval, lambda, kInf);
}

namespace {

// phi(c) = (e^{cr} - 1) / c and the ratios phi'/phi, phi''/phi.
struct PhiRatios {
  double log_phi;
  double d1;  // phi'/phi
  double d2;  // phi''/phi
};

PhiRatios phi_ratios(double c, double r) {
  const double cr = c * r;
  if (std::abs(cr) < 1.0) {
    // Power series in c: phi = sum_{k>=1} c^{k-1} r^k / k!
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    double rk_over_fact = 1.0;  // r^k / k!
    for (int k = 1; k <= 40; ++k) {
      rk_over_fact *= r / k;
      const double cpow = std::pow(c, k - 1);
      p0 += cpow * rk_over_fact;
      if (k >= 2) p1 += (k - 1) * std::pow(c, k - 2) * rk_over_fact;
      if (k >= 3) p2 += (k - 1) * (k - 2) * std::pow(c, k - 3) * rk_over_fact;
    }
    return {std::log(p0), p1 / p0, p2 / p0};
  }
  // D = e^{cr} / (e^{cr} - 1), computed without overflow.
  const double D = 1.0 / (-std::expm1(-cr));
  const double inv_em1 = cr > 700.0 ? 0.0 : 1.0 / std::expm1(cr);
  double log_phi;
  if (cr > 30.0) {
    log_phi = cr + std::log1p(-std::exp(-cr)) - std::log(c);
  } else {
    log_phi = std::log(std::expm1(cr) / c);
  }
  const double d1 = r * D - 1.0 / c;
  const double d2 = (r * r - 2.0 * r / c + 2.0 / (c * c)) * D - 2.0 * inv_em1 / (c * c);
  return {log_phi, d1, d2};
}

}  // namespace

LogMgfSurface delayed_surface(double lambda, double r, double A) {
  if (!(lambda > 0.0)) throw std::invalid_argument("delayed_surface: lambda must be positive");
  if (!(r >= 0.0) || !(A > 0.0)) throw std::invalid_argument("delayed_surface: need r >= 0, A > 0");
  auto eval = [lambda, r, A](double x, double y) {
    if (!(x < lambda)) return infinite_jet();
    const ExpPart e = exponential_part(lambda, x);
    MgfJet j;
    j.value = x * (r + A) + e.value + y;
    j.gx = r + A + e.d1;
    j.gy = 1.0;
    j.hxx = e.d2;
    if (r == 0.0) return j;

    // ln G with G = e^{-lambda r} (1 + q phi(c)), q = lambda e^y, c = x + q.
    const double log_q = std::log(lambda) + y;
    const double q = std::exp(log_q);
    const double c = x + q;
    const PhiRatios ph = phi_ratios(c, r);
    const double log_qphi = log_q + ph.log_phi;
    const double log1p_qphi = log_qphi > 30.0 ? log_qphi + std::log1p(std::exp(-log_qphi))
                                              : std::log1p(std::exp(log_qphi));
    const double psi = 1.0 / (1.0 + std::exp(-log_qphi));  // q phi / (1 + q phi)

    const double lx = psi * ph.d1;
    const double ly = psi * (1.0 + q * ph.d1);
    const double lxx = psi * ph.d2 - lx * lx;
    const double lxy = psi * (ph.d1 + q * ph.d2) - lx * ly;
    const double lyy = psi * (1.0 + 3.0 * q * ph.d1 + q * q * ph.d2) - ly * ly;

    j.value += -lambda * r + log1p_qphi;
    j.gx += lx;
    j.gy += ly;
    j.hxx += lxx;
    j.hxy += lxy;
    j.hyy += lyy;
    return j;
  };
  return LogMgfSurface(SurfaceSource::analytic, "delayed", eval, lambda, kInf);
}

double delayed_joint_log_mgf_quadrature(double lambda, double r, double A, double x, double y) {
  if (!(x < lambda)) return kInf;
  const double base = x * (r + A) + std::log(lambda) - std::log(lambda - x) + y;
  const double mu = lambda * r;
  // E exp(xX + yK) = P(K=0) + sum_k P(K=k) e^{yk} int_0^r e^{xs} k s^{k-1} / r^k ds
  double total = std::exp(-mu);
  double log_pk = -mu;
  for (int k = 1; k < 10000; ++k) {
    log_pk += std::log(mu) - std::log(static_cast<double>(k));
    auto density = [k, r, x](double s) {
      return std::exp(x * s + std::log(static_cast<double>(k)) + (k - 1) * std::log(s / r) - std::log(r));
    };
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(density, 0.0, r, 15, 1e-14);
    const double term = std::exp(log_pk + y * k) * integral;
    total += term;
    if (k > mu && term < 1e-18 * total) break;
  }
  return base + std::log(total);
}

namespace {

struct EmpiricalData {
  std::vector<double> tau;
  std::vector<double> w;
};

double largest_share(const EmpiricalData& d, double x, double y) {
  double top = -kInf;
  for (std::size_t i = 0; i < d.tau.size(); ++i) top = std::max(top, x * d.tau[i] + y * d.w[i]);
  double s = 0.0;
  for (std::size_t i = 0; i < d.tau.size(); ++i) s += std::exp(x * d.tau[i] + y * d.w[i] - top);
  return 1.0 / s;
}

// Smallest positive t with share(t * direction) > limit, or +inf.
double share_boundary(const EmpiricalData& d, double dx, double dy, double limit) {
  double lo = 0.0, hi = 0.125;
  while (largest_share(d, hi * dx, hi * dy) <= limit) {
    lo = hi;
    hi *= 2.0;
    if (hi > 4096.0) return kInf;
  }
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (largest_share(d, mid * dx, mid * dy) > limit ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

LogMgfSurface empirical_log_mgf(const WindowSample& sample, const EmpiricalOptions& options) {
  if (sample.size() < options.min_windows) {
    throw std::invalid_argument("empirical_log_mgf needs at least " + std::to_string(options.min_windows) +
                                " windows, got " + std::to_string(sample.size()));
  }
  auto data = std::make_shared<EmpiricalData>(EmpiricalData{sample.taus(), sample.counts()});
  const double x_max = std::min(options.x_cap, share_boundary(*data, 1.0, 0.0, options.max_share));
  const double y_max = share_boundary(*data, 0.0, 1.0, options.max_share);
  const double max_share = options.max_share;

  auto eval = [data, max_share](double x, double y) {
    const auto& tau = data->tau;
    const auto& w = data->w;
    const std::size_t n = tau.size();
    double top = -kInf;
    for (std::size_t i = 0; i < n; ++i) top = std::max(top, x * tau[i] + y * w[i]);
    double s0 = 0.0, st = 0.0, sw = 0.0, stt = 0.0, stw = 0.0, sww = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::exp(x * tau[i] + y * w[i] - top);
      const double et = e * tau[i];
      const double ew = e * w[i];
      s0 += e;
      st += et;
      sw += ew;
      stt += et * tau[i];
      stw += et * w[i];
      sww += ew * w[i];
    }
    MgfJet j;
    j.value = top + std::log(s0 / static_cast<double>(n));
    j.gx = st / s0;
    j.gy = sw / s0;
    j.hxx = std::max(0.0, stt / s0 - j.gx * j.gx);
    j.hxy = stw / s0 - j.gx * j.gy;
    j.hyy = std::max(0.0, sww / s0 - j.gy * j.gy);
    j.flagged = 1.0 / s0 > max_share;
    return j;
  };
  return LogMgfSurface(SurfaceSource::empirical, "empirical", eval, x_max, y_max);
}

OptimBox default_box(const LogMgfSurface& surface, double half_width) {
  OptimBox b{-half_width, half_width, -half_width, half_width};
  auto clip = [half_width](double cap) {
    if (!std::isfinite(cap) || cap > half_width) return half_width;
    return cap - 1e-9 * std::max(1.0, std::abs(cap));
  };
  b.x_hi = clip(surface.x_max());
  b.y_hi = clip(surface.y_max());
  return b;
}

namespace {

SurfaceGrid empty_grid(const OptimBox& box, std::size_t n) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points per axis");
  SurfaceGrid g;
  g.box = box;
  g.n = n;
  g.xs.resize(n);
  g.ys.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    g.xs[i] = box.x_lo + f * (box.x_hi - box.x_lo);
    g.ys[i] = box.y_lo + f * (box.y_hi - box.y_lo);
  }
  g.values.resize(n * n);
  g.flagged.resize(n * n);
  return g;
}

}  // namespace

SurfaceGrid tabulate(const LogMgfSurface& surface, const OptimBox& box, std::size_t n, int threads) {
  SurfaceGrid g = empty_grid(box, n);
  parallel_for(n * n, threads, [&](std::size_t k) {
    const MgfJet j = surface.jet(g.xs[k / n], g.ys[k % n]);
    g.values[k] = j.value;
    g.flagged[k] = j.flagged;
  });
  return g;
}

SurfaceGrid tabulate_serial(const LogMgfSurface& surface, const OptimBox& box, std::size_t n) {
  SurfaceGrid g = empty_grid(box, n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const MgfJet j = surface.jet(g.xs[k / n], g.ys[k % n]);
    g.values[k] = j.value;
    g.flagged[k] = j.flagged;
  }
  return g;
}

}  // namespace hawkes
