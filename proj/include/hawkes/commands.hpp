#pragma once

#include <ostream>

#include "hawkes/config.hpp"
#include "hawkes/kernel.hpp"

namespace hawkes {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitConfig = 2, kExitIo = 3 };

/// Shapes with closed-form window laws, recognised from the segments.
enum class KernelCase { poisson, canceling, delayed, linear, general };

struct CaseInfo {
  KernelCase kind = KernelCase::general;
  double r = 0.0;  // delay (delayed case)
  double A = 0.0;  // dead time (canceling / delayed)
};

CaseInfo infer_case(const Kernel& kernel, double lambda);
const char* to_string(KernelCase k);

// Each command writes its files under config.output_dir, prints a JSON
// summary to `out` and returns an ExitCode. Errors propagate as exceptions
// (ConfigError, IoError, std::invalid_argument) and are mapped by run_cli.
int cmd_simulate(const ExperimentConfig& config, std::ostream& out);
int cmd_decompose(const ExperimentConfig& config, std::ostream& out);
int cmd_estimate(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_rate(const ExperimentConfig& config, std::ostream& out);
int cmd_oracle(const ExperimentConfig& config, std::ostream& out);
int cmd_validate(const ExperimentConfig& config, std::ostream& out);
int cmd_deviations(const ExperimentConfig& config, std::ostream& out);

/// Parses `hawkes <subcommand> [--config file] [flags]`; flags override the file.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hawkes
