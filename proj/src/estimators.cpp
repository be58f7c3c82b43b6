#include "hawkes/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hawkes/parallel.hpp"
#include "hawkes/stats.hpp"

namespace hawkes {

namespace {

void require_two(const WindowSample& sample) {
  if (sample.size() < 2) throw std::invalid_argument("need at least 2 completed windows");
}

}  // namespace

LimitEstimates lln_estimate(const WindowSample& sample) {
  require_two(sample);
  const std::vector<double> tau = sample.taus();
  const std::vector<double> w = sample.counts();
  const double n = static_cast<double>(sample.size());

  LimitEstimates e;
  e.n_windows = sample.size();
  double total_tau = 0.0, total_w = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    total_tau += tau[i];
    total_w += w[i];
  }
  e.mean_tau = total_tau / n;
  e.mean_w = total_w / n;
  e.m_hat = total_w / total_tau;
  e.var_tau = sample_variance(tau);
  e.var_w = sample_variance(w);
  e.cov_tau_w = sample_covariance(tau, w);
  e.se_mean_tau = std::sqrt(e.var_tau / n);
  e.se_mean_w = std::sqrt(e.var_w / n);
  e.sigma2_hat = clt_sigma2(sample);
  e.se_m_hat = std::sqrt(e.sigma2_hat / (n * e.mean_tau));
  return e;
}

double clt_sigma2(const WindowSample& sample) {
  require_two(sample);
  double total_tau = 0.0, total_w = 0.0;
  for (const auto& win : sample.windows) {
    total_tau += win.tau();
    total_w += static_cast<double>(win.w());
  }
  const double m = total_w / total_tau;
  std::vector<double> residual;
  residual.reserve(sample.size());
  for (const auto& win : sample.windows) residual.push_back(static_cast<double>(win.w()) - m * win.tau());
  const double mean_tau = total_tau / static_cast<double>(sample.size());
  const double v = sample_variance(residual);
  return v > 0.0 ? v / mean_tau : 0.0;
}

CltCheck clt_normality_check(const Kernel& kernel, double lambda, double t, std::size_t n_replicas,
                             std::uint64_t seed, std::optional<CltReference> reference,
                             double window_length, int threads) {
  if (n_replicas < 500) throw std::invalid_argument("clt_normality_check needs >= 500 replicas");
  if (!(t > 0.0)) throw std::invalid_argument("clt_normality_check needs t > 0");

  CltCheck out;
  out.n_replicas = n_replicas;
  ReplicaPlan plan{kernel, lambda, t, seed, 0, n_replicas};
  std::vector<std::size_t> counts(n_replicas);

  if (reference) {
    counts = replica_counts(plan, threads);
    out.m = reference->m;
    out.sigma2 = reference->sigma2;
  } else {
    const double L = window_length > 0.0 ? window_length : kernel.support_length();
    if (!(L > 0.0)) throw std::invalid_argument("window length required for the zero kernel");
    const auto streams = simulate_replicas(plan, threads);
    WindowSample pooled;
    for (std::size_t i = 0; i < n_replicas; ++i) {
      counts[i] = streams[i].size();
      append_sample(pooled, decompose(streams[i], L));
    }
    if (pooled.size() < 10 * n_replicas) {
      throw std::invalid_argument("horizon too short: fewer than 10 windows per replica");
    }
    const LimitEstimates e = lln_estimate(pooled);
    out.m = e.m_hat;
    out.sigma2 = e.sigma2_hat;
    out.estimated = true;
  }

  // sqrt(t) (N_t / t - m) ~ Normal(0, sigma2) is N_t ~ Normal(m t, sigma2 t) on the integers.
  out.ks_distance = ks_lattice_normal_distance(counts, out.m * t, out.sigma2 * t);
  std::vector<double> z(n_replicas);
  const double root_t = std::sqrt(t);
  for (std::size_t i = 0; i < n_replicas; ++i) z[i] = root_t * (static_cast<double>(counts[i]) / t - out.m);
  out.ks_distance_uncorrected = ks_normal_distance(z, 0.0, out.sigma2);
  return out;
}

}  // namespace hawkes
