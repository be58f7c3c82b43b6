#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hawkes/kernel.hpp"

namespace hawkes {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RateSection {
  std::string source = "oracle";  // oracle | analytic | empirical
  double z_min = 0.1;
  double z_max = 0.9;
  double z_step = 0.1;
  std::size_t windows = 100'000;  // empirical sample size
};

struct ValidateSection {
  std::string suite;  // coupling | renewal | clt | poisson | geometric
  double alpha = 0.01;
  std::size_t seeds = 1000;
  std::size_t windows = 100'000;
  double ks_max = 0.05;
  std::size_t max_k = 20;
};

struct DeviationSection {
  double a = 0.5;
  double kappa = 0.5;
  double kappa_prime = 0.25;
  std::optional<double> theta0;  // overrides the computed bound
};

/// Everything a run depends on. Serialised verbatim into manifests.
struct ExperimentConfig {
  std::vector<Segment> kernel;
  double lambda = 1.0;
  double horizon = 100.0;
  std::uint64_t seed = 0;
  std::size_t replicas = 1;
  std::uint64_t first_replica = 0;
  int threads = 0;
  std::string output_dir = "out";
  std::string coupling = "none";  // none | majorant | minorant | both
  double window_length = 0.0;     // 0: use L(h)
  std::vector<std::string> inputs;
  RateSection rate;
  ValidateSection validate;
  DeviationSection deviations;
};

/// Rejects unknown keys and out-of-range values.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// "start,end,value;start,end,value"
std::vector<Segment> parse_kernel_spec(const std::string& spec);

/// Range checks shared by every subcommand.
void check_config(const ExperimentConfig& config);

/// The configured kernel; ConfigError if it is not admissible.
Kernel config_kernel(const ExperimentConfig& config);

/// window_length, or L(h) when unset; ConfigError when both are zero.
double config_window_length(const ExperimentConfig& config, const Kernel& kernel);

}  // namespace hawkes
