#include "hawkes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace hawkes {

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;  // series converges poorly; value is 1 to double precision
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
  double lo = 0.2, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_survival(mid) > alpha ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double ks_statistic(std::span<const double> values, const std::function<double(double)>& cdf) {
  if (values.empty()) throw std::invalid_argument("KS statistic of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double i_d = static_cast<double>(i);
    d = std::max({d, (i_d + 1.0) / n - f, f - i_d / n});
  }
  return d;
}

TestVerdict ks_exponential(std::span<const double> values, double rate, double alpha) {
  if (values.empty()) throw std::invalid_argument("ks_exponential: empty input");
  if (!(rate > 0.0)) throw std::invalid_argument("ks_exponential: rate must be positive");
  TestVerdict v;
  v.statistic = ks_statistic(values, [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); });
  const double sqrt_n = std::sqrt(static_cast<double>(values.size()));
  v.critical = kolmogorov_critical(alpha) / sqrt_n;
  v.p_value = kolmogorov_survival(sqrt_n * v.statistic);
  v.pass = v.statistic <= v.critical;
  return v;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ks_normal_distance(std::span<const double> values, double mean, double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("ks_normal_distance: variance must be positive");
  const double sd = std::sqrt(variance);
  return ks_statistic(values, [=](double x) { return normal_cdf((x - mean) / sd); });
}

double ks_lattice_normal_distance(std::span<const std::size_t> counts, double mean, double variance) {
  if (counts.empty()) throw std::invalid_argument("ks_lattice_normal_distance: empty input");
  if (!(variance > 0.0)) throw std::invalid_argument("ks_lattice_normal_distance: variance must be positive");
  std::vector<std::size_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = std::sqrt(variance);
  // G(k) = P(Normal <= k + 1/2): a step function with the same support as the sample.
  auto G = [=](double k) { return normal_cdf((k + 0.5 - mean) / sd); };
  const double n = static_cast<double>(sorted.size());
  double d = 0.0, below = 0.0;  // below = F_n just left of the current value
  for (std::size_t i = 0; i < sorted.size();) {
    const double k = static_cast<double>(sorted[i]);
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double at = static_cast<double>(j) / n;
    // On [previous value, k) F_n is flat at `below` while G climbs to G(k - 1).
    d = std::max({d, std::abs(below - G(k - 1.0)), std::abs(at - G(k))});
    below = at;
    i = j;
  }
  return std::max(d, 1.0 - G(static_cast<double>(sorted.back())));
}

TestVerdict ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty input");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  TestVerdict v;
  v.statistic = d;
  const double n_eff = n * m / (n + m);
  v.critical = kolmogorov_critical(alpha) / std::sqrt(n_eff);
  v.p_value = kolmogorov_survival(std::sqrt(n_eff) * d);
  v.pass = d <= v.critical;
  return v;
}

ChiSquareResult poisson_gof(std::span<const std::size_t> counts, double mean, double alpha) {
  if (counts.empty()) throw std::invalid_argument("poisson_gof: empty input");
  if (!(mean > 0.0)) throw std::invalid_argument("poisson_gof: mean must be positive");

  const double n = static_cast<double>(counts.size());

  // Cells are [lo_k, lo_{k+1}); the last one is open to the right.
  std::vector<std::size_t> lower;
  std::vector<double> expected;
  double pmf = std::exp(-mean);
  double cdf_before = 0.0;
  std::size_t k = 0;
  std::size_t cell_lo = 0;
  double cell_mass = 0.0;
  for (;;) {
    cell_mass += pmf;
    const double remaining = 1.0 - (cdf_before + pmf);
    cdf_before += pmf;
    ++k;
    pmf *= mean / static_cast<double>(k);
    if (cell_mass * n >= 5.0 && remaining * n >= 5.0) {
      lower.push_back(cell_lo);
      expected.push_back(cell_mass * n);
      cell_lo = k;
      cell_mass = 0.0;
    }
    if (remaining * n < 5.0) {
      // Right tail: everything from cell_lo on.
      const double tail = (1.0 - cdf_before + cell_mass) * n;
      if (tail >= 5.0 || expected.empty()) {
        lower.push_back(cell_lo);
        expected.push_back(tail);
      } else {
        expected.back() += tail;
      }
      break;
    }
  }

  std::vector<double> observed(expected.size(), 0.0);
  for (std::size_t c : counts) {
    auto it = std::upper_bound(lower.begin(), lower.end(), c);
    observed[static_cast<std::size_t>(it - lower.begin()) - 1] += 1.0;
  }

  ChiSquareResult r;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double diff = observed[i] - expected[i];
    r.statistic += diff * diff / expected[i];
  }
  r.cells = expected.size();
  r.dof = r.cells > 1 ? r.cells - 1 : 0;
  r.p_value = r.dof > 0 ? boost::math::gamma_q(0.5 * static_cast<double>(r.dof), 0.5 * r.statistic)
                        : (r.statistic > 0.0 ? 0.0 : 1.0);
  r.pass = r.p_value >= alpha;
  return r;
}

double sample_mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_covariance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("covariance needs two equal samples of size >= 2");
  const double ma = sample_mean(a), mb = sample_mean(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(a.size() - 1);
}

double sample_variance(std::span<const double> v) { return sample_covariance(v, v); }

double lag1_correlation(std::span<const double> v) {
  if (v.size() < 3) throw std::invalid_argument("lag-1 correlation needs >= 3 values");
  auto head = v.first(v.size() - 1);
  auto tail = v.subspan(1);
  const double va = sample_variance(head), vb = sample_variance(tail);
  if (va == 0.0 || vb == 0.0) return 0.0;
  return sample_covariance(head, tail) / std::sqrt(va * vb);
}

double poisson_upper_tail(double mean, std::size_t k) {
  if (k == 0) return 1.0;
  return boost::math::gamma_p(static_cast<double>(k), mean);
}

}  // namespace hawkes
