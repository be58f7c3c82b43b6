#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hawkes {

struct TestVerdict {
  double statistic = 0.0;
  double critical = 0.0;  // reject when statistic > critical
  double p_value = 1.0;
  bool pass = true;
};

/// P(K > x) for the limiting Kolmogorov distribution.
double kolmogorov_survival(double x);
/// Asymptotic critical value c with P(K > c) = alpha.
double kolmogorov_critical(double alpha);

/// sup |F_n - F| against a continuous cdf.
double ks_statistic(std::span<const double> values, const std::function<double(double)>& cdf);

/// One-sample KS against Exp(rate), asymptotic critical value.
TestVerdict ks_exponential(std::span<const double> values, double rate, double alpha = 0.01);

/// KS distance to Normal(mean, variance).
double ks_normal_distance(std::span<const double> values, double mean, double variance);

/// KS distance between an integer sample and Normal(mean, variance) with the
/// continuity correction, i.e. against P(Normal <= k + 1/2) at each integer k.
double ks_lattice_normal_distance(std::span<const std::size_t> counts, double mean, double variance);

TestVerdict ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha = 0.01);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t cells = 0;
  std::size_t dof = 0;
  double p_value = 1.0;
  bool pass = true;
};

/// Chi-square goodness of fit against Poisson(mean). Cells are pooled from the
/// left and the right tail is pooled until every expected count is >= 5.
ChiSquareResult poisson_gof(std::span<const std::size_t> counts, double mean, double alpha = 0.01);

/// Sample mean / unbiased variance / covariance.
double sample_mean(std::span<const double> v);
double sample_variance(std::span<const double> v);
double sample_covariance(std::span<const double> a, std::span<const double> b);
/// Pearson correlation of (v[i], v[i+1]).
double lag1_correlation(std::span<const double> v);

/// P(X >= k) for X ~ Poisson(mean).
double poisson_upper_tail(double mean, std::size_t k);
double normal_cdf(double x);

}  // namespace hawkes
