#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hawkes/kernel.hpp"
#include "hawkes/renewal.hpp"

namespace hawkes {

/// Renewal-reward moments of (tau, W) and the LLN / CLT constants they imply.
struct LimitEstimates {
  std::size_t n_windows = 0;
  double mean_tau = 0.0;
  double mean_w = 0.0;
  double var_tau = 0.0;
  double var_w = 0.0;
  double cov_tau_w = 0.0;
  double se_mean_tau = 0.0;
  double se_mean_w = 0.0;
  double m_hat = 0.0;      // events per unit time, ratio of means
  double se_m_hat = 0.0;   // delta method
  double sigma2_hat = 0.0; // Var(W - m tau) / E tau
};

LimitEstimates lln_estimate(const WindowSample& sample);
double clt_sigma2(const WindowSample& sample);

struct CltReference {
  double m = 0.0;
  double sigma2 = 0.0;
};

struct CltCheck {
  double ks_distance = 0.0;              // continuity-corrected (N_t is integer valued)
  double ks_distance_uncorrected = 0.0;  // plain KS of sqrt(t) (N_t / t - m)
  double m = 0.0;
  double sigma2 = 0.0;
  bool estimated = false;  // m / sigma2 came from the replicas' own windows
  std::size_t n_replicas = 0;
};

/// Simulates n_replicas independent paths on [0, t] and returns the KS
/// distance of sqrt(t) (N_t / t - m) to Normal(0, sigma2), compared on the
/// integer lattice of N_t with the continuity correction. Without a
/// reference, m and sigma2 are estimated from the pooled renewal windows of
/// the same replicas (window_length 0 means L(h)).
CltCheck clt_normality_check(const Kernel& kernel, double lambda, double t, std::size_t n_replicas,
                             std::uint64_t seed, std::optional<CltReference> reference = std::nullopt,
                             double window_length = 0.0, int threads = 0);

}  // namespace hawkes
