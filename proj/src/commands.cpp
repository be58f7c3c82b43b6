#include "hawkes/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hawkes/engine.hpp"
#include "hawkes/estimators.hpp"
#include "hawkes/io.hpp"
#include "hawkes/oracles.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/rates.hpp"
#include "hawkes/renewal.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/surface.hpp"

namespace hawkes {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

CaseInfo infer_case(const Kernel& kernel, double lambda) {
  if (kernel.empty()) return {KernelCase::poisson, 0.0, 0.0};
  const auto& segs = kernel.segments();
  if (segs.size() == 1 && segs[0].value == -lambda) {
    const double r = segs[0].start, A = segs[0].end - segs[0].start;
    if (r == 0.0) return {KernelCase::canceling, 0.0, A};
    if (A > r) return {KernelCase::delayed, r, A};
  }
  if (kernel.is_nonnegative()) return {KernelCase::linear, 0.0, 0.0};
  return {KernelCase::general, 0.0, 0.0};
}

const char* to_string(KernelCase k) {
  switch (k) {
    case KernelCase::poisson: return "poisson";
    case KernelCase::canceling: return "canceling";
    case KernelCase::delayed: return "delayed";
    case KernelCase::linear: return "linear";
    case KernelCase::general: return "general";
  }
  return "general";
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

ojson kernel_json(const Kernel& kernel) {
  auto arr = ojson::array();
  for (const auto& s : kernel.segments()) arr.push_back({s.start, s.end, s.value});
  return arr;
}

ojson manifest(const ExperimentConfig& c, const Kernel& kernel, const char* command) {
  ojson m;
  m["schema_version"] = kManifestSchema;
  m["toolkit_version"] = kToolkitVersion;
  m["command"] = command;
  m["kernel"] = kernel_json(kernel);
  m["kernel_hash"] = kernel.hash();
  m["lambda"] = c.lambda;
  m["seed"] = c.seed;
  m["horizon"] = c.horizon;
  m["schemas"] = {{"events", kEventsSchema}, {"windows", kWindowsSchema}, {"rate", kRateSchema}};
  m["config"] = to_json(c);
  return m;
}

void write_manifest(const fs::path& dir, ojson m) {
  m["run_info"] = {{"timestamp", utc_timestamp()}};
  write_json(dir / "manifest.json", m);
}

ReplicaPlan plan_for(const ExperimentConfig& c, const Kernel& kernel) {
  return {kernel, c.lambda, c.horizon, c.seed, c.first_replica, c.replicas};
}

struct LabelledStream {
  std::uint64_t replica;
  EventStream stream;
};

// Streams from the configured input files, or freshly simulated replicas.
std::vector<LabelledStream> obtain_streams(const ExperimentConfig& c, const Kernel& kernel) {
  std::vector<LabelledStream> out;
  if (!c.inputs.empty()) {
    for (const auto& path : c.inputs) {
      EventsFile f = read_events_csv(path);
      if (!f.header.kernel_hash.empty() && f.header.kernel_hash != kernel.hash()) {
        throw ConfigError(path + " was produced with kernel " + f.header.kernel_hash + ", config has " +
                          kernel.hash());
      }
      out.push_back({f.header.replica, std::move(f.stream)});
    }
    return out;
  }
  const ReplicaPlan plan = plan_for(c, kernel);
  auto streams = simulate_replicas(plan, c.threads);
  for (std::size_t i = 0; i < streams.size(); ++i) out.push_back({plan.first_replica + i, std::move(streams[i])});
  return out;
}

SampleProvenance provenance(const ExperimentConfig& c, const Kernel& kernel, std::uint64_t replica) {
  return {c.lambda, kernel.describe(), kernel.hash(), c.seed, replica};
}

ojson estimates_json(const LimitEstimates& e, std::size_t discarded) {
  return {{"n_windows", e.n_windows},     {"discarded_tail_count", discarded},
          {"m_hat", e.m_hat},             {"se_m_hat", e.se_m_hat},
          {"sigma2_hat", e.sigma2_hat},   {"mean_tau", e.mean_tau},
          {"se_mean_tau", e.se_mean_tau}, {"mean_w", e.mean_w},
          {"se_mean_w", e.se_mean_w},     {"var_tau", e.var_tau},
          {"var_w", e.var_w},             {"cov_tau_w", e.cov_tau_w}};
}

}  // namespace

int cmd_simulate(const ExperimentConfig& c, std::ostream& out) {
  const Kernel kernel = config_kernel(c);
  const fs::path dir = c.output_dir;
  const ReplicaPlan plan = plan_for(c, kernel);

  std::vector<Kernel> kernels{kernel};
  std::vector<std::string> roles{"main"};
  if (c.coupling == "majorant" || c.coupling == "both") {
    kernels.push_back(positive_part(kernel));
    roles.push_back("majorant");
  }
  if (c.coupling == "minorant" || c.coupling == "both") {
    kernels.push_back(canceling_kernel(c.lambda, kernel.support_length()));
    roles.push_back("minorant");
  }

  std::vector<std::vector<EventStream>> runs(plan.count);
  if (kernels.size() == 1) {
    auto streams = simulate_replicas(plan, c.threads);
    for (std::size_t i = 0; i < plan.count; ++i) runs[i].push_back(std::move(streams[i]));
  } else {
    parallel_for(plan.count, c.threads, [&](std::size_t i) {
      runs[i] = simulate_coupled(kernels, c.lambda, c.horizon, c.seed, plan.first_replica + i).streams;
    });
  }

  ojson m = manifest(c, kernel, "simulate");
  ojson replicas = ojson::array(), files = ojson::array();
  ojson counts = ojson::object();
  for (const auto& role : roles) counts[role] = ojson::array();
  for (std::size_t i = 0; i < plan.count; ++i) {
    const std::uint64_t idx = plan.first_replica + i;
    replicas.push_back(idx);
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      const std::string name = kernels.size() == 1 ? "events_" + std::to_string(idx) + ".csv"
                                                   : "events_" + std::to_string(idx) + "_" + roles[k] + ".csv";
      write_events_csv(dir / name, runs[i][k], {c.lambda, kernels[k].hash(), c.seed, idx, c.horizon, roles[k]});
      files.push_back(name);
      counts[roles[k]].push_back(runs[i][k].size());
    }
  }
  m["replica_indices"] = replicas;
  m["event_counts"] = kernels.size() == 1 ? counts["main"] : counts;
  if (kernels.size() > 1) {
    ojson group = ojson::array();
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      group.push_back({{"role", roles[k]}, {"kernel", kernel_json(kernels[k])}, {"kernel_hash", kernels[k].hash()}});
    }
    m["coupling_group"] = group;
  }
  m["outputs"] = files;
  write_manifest(dir, m);
  out << ojson{{"replicas", plan.count}, {"event_counts", m["event_counts"]}, {"output_dir", dir.string()}}.dump(2)
      << '\n';
  return kExitOk;
}

int cmd_decompose(const ExperimentConfig& c, std::ostream& out) {
  const Kernel kernel = config_kernel(c);
  const double L = config_window_length(c, kernel);
  const fs::path dir = c.output_dir;
  ojson m = manifest(c, kernel, "decompose");
  ojson files = ojson::array(), windows = ojson::array();
  for (const auto& s : obtain_streams(c, kernel)) {
    WindowSample sample = decompose(s.stream, L);
    sample.provenance = provenance(c, kernel, s.replica);
    const std::string name = "windows_" + std::to_string(s.replica) + ".csv";
    write_windows_csv(dir / name, sample);
    files.push_back(name);
    windows.push_back({{"replica", s.replica},
                       {"n_windows", sample.size()},
                       {"discarded_tail_count", sample.discarded_tail_count}});
  }
  m["window_length"] = L;
  m["windows"] = windows;
  m["outputs"] = files;
  write_manifest(dir, m);
  out << windows.dump(2) << '\n';
  return kExitOk;
}

int cmd_estimate(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const Kernel kernel = config_kernel(c);
  const double L = config_window_length(c, kernel);
  WindowSample pooled;
  pooled.window_length = L;
  for (const auto& s : obtain_streams(c, kernel)) {
    WindowSample one = decompose(s.stream, L);
    one.provenance = provenance(c, kernel, s.replica);
    if (pooled.windows.empty() && pooled.discarded_tail_count == 0) pooled.provenance = one.provenance;
    append_sample(pooled, one);
  }
  if (pooled.size() < 2) {
    err << "zero windows: " << pooled.size() << " completed renewal window(s) (need 2); "
        << pooled.discarded_tail_count << " event(s) in unfinished tails. Increase the horizon.\n";
    return kExitFail;
  }
  const LimitEstimates e = lln_estimate(pooled);
  const ojson result = estimates_json(e, pooled.discarded_tail_count);
  const fs::path dir = c.output_dir;
  write_json(dir / "estimates.json", result);
  ojson m = manifest(c, kernel, "estimate");
  m["window_length"] = L;
  m["outputs"] = {"estimates.json"};
  write_manifest(dir, m);
  out << result.dump(2) << '\n';
  return kExitOk;
}

namespace {

std::function<double(double)> closed_form_rate(const CaseInfo& info, double lambda, const Kernel& kernel) {
  switch (info.kind) {
    case KernelCase::poisson: return [lambda](double z) { return oracle_cancel_rate(lambda, 0.0, z); };
    case KernelCase::canceling: return [lambda, A = info.A](double z) { return oracle_cancel_rate(lambda, A, z); };
    case KernelCase::linear: {
      const LinearOracle o = oracle_linear(lambda, kernel.l1());
      return [o](double z) { return o.I(z); };
    }
    default:
      throw ConfigError(std::string("no closed-form rate for a ") + to_string(info.kind) +
                        " kernel; use source analytic or empirical");
  }
}

LogMgfSurface analytic_surface(const CaseInfo& info, double lambda) {
  switch (info.kind) {
    case KernelCase::poisson: return canceling_surface(lambda, 0.0);
    case KernelCase::canceling: return canceling_surface(lambda, info.A);
    case KernelCase::delayed: return delayed_surface(lambda, info.r, info.A);
    default:
      throw ConfigError(std::string("no analytic window law for a ") + to_string(info.kind) +
                        " kernel; use source empirical");
  }
}

WindowSample empirical_sample(const ExperimentConfig& c, const Kernel& kernel) {
  if (c.rate.windows < 1000) throw ConfigError("empirical source needs rate.windows >= 1000");
  const double L = config_window_length(c, kernel);
  return sample_windows(plan_for(c, kernel), L, c.rate.windows, c.threads);
}

LogMgfSurface empirical_surface(const WindowSample& sample, const Kernel& kernel, double lambda) {
  EmpiricalOptions opts;
  opts.x_cap = alpha0(kernel, lambda);
  return empirical_log_mgf(sample, opts);
}

}  // namespace

int cmd_rate(const ExperimentConfig& c, std::ostream& out) {
  const Kernel kernel = config_kernel(c);
  const CaseInfo info = infer_case(kernel, c.lambda);
  const auto grid = linear_grid(c.rate.z_min, c.rate.z_max, c.rate.z_step);
  RateCurve curve;
  ojson m = manifest(c, kernel, "rate");
  if (c.rate.source == "oracle") {
    curve = rate_curve(closed_form_rate(info, c.lambda, kernel), grid);
  } else if (c.rate.source == "analytic") {
    curve = rate_curve(CramerSolver(analytic_surface(info, c.lambda), {40.0, 64, c.threads}), grid, c.threads);
  } else {
    const WindowSample sample = empirical_sample(c, kernel);
    m["n_windows"] = sample.size();
    curve = rate_curve(CramerSolver(empirical_surface(sample, kernel, c.lambda), {40.0, 64, c.threads}), grid,
                       c.threads);
  }
  const fs::path dir = c.output_dir;
  write_rate_csv(dir / "rate.csv", curve);
  m["case"] = to_string(info.kind);
  m["provenance"] = to_string(curve.provenance);
  m["outputs"] = {"rate.csv"};
  write_manifest(dir, m);

  ojson rows = ojson::array();
  for (std::size_t i = 0; i < curve.z.size(); ++i) {
    rows.push_back({{"z", curve.z[i]}, {"J", json_number(curve.J[i])}, {"flag", curve.flag[i] != 0}});
  }
  out << ojson{{"provenance", to_string(curve.provenance)}, {"rows", rows}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_oracle(const ExperimentConfig& c, std::ostream& out) {
  const Kernel kernel = config_kernel(c);
  const CaseInfo info = infer_case(kernel, c.lambda);
  ojson o;
  o["case"] = to_string(info.kind);
  o["alpha0"] = alpha0(kernel, c.lambda);
  o["theta0_bound"] = json_number(theta0(kernel, c.lambda).value);
  switch (info.kind) {
    case KernelCase::poisson:
    case KernelCase::canceling: {
      const CancelOracle k = oracle_cancel(c.lambda, info.A);
      o["A"] = k.A;
      o["mean_w"] = k.mean_w;
      o["var_w"] = k.var_w;
      o["mean_tau"] = k.mean_tau;
      o["var_tau"] = k.var_tau;
      o["m"] = k.m;
      o["sigma2"] = k.sigma2;
      o["theta0"] = json_number(k.theta0);
      break;
    }
    case KernelCase::delayed: {
      const DelayedOracle k = oracle_delayed(c.lambda, info.r, info.A);
      o["r"] = k.r;
      o["A"] = k.A;
      o["mean_w"] = k.mean_w;
      o["var_w"] = k.var_w;
      o["mean_tau"] = k.mean_tau;
      o["var_tau"] = k.var_tau;
      o["cov_tau_w"] = k.cov_tau_w;
      o["atom_mass"] = k.atom_mass;
      o["m"] = k.m;
      o["sigma2"] = k.sigma2;
      break;
    }
    case KernelCase::linear: {
      const LinearOracle k = oracle_linear(c.lambda, kernel.l1());
      o["h_l1"] = k.h_l1;
      o["mu"] = k.mu;
      o["sigma2"] = k.sigma2;
      break;
    }
    case KernelCase::general:
      o["note"] = "no closed-form window law for this kernel";
      break;
  }
  const fs::path dir = c.output_dir;
  write_json(dir / "oracle.json", o);
  out << o.dump(2) << '\n';
  return kExitOk;
}

namespace {

struct Report {
  ojson checks = ojson::array();
  bool pass = true;

  void add(const std::string& name, double statistic, double threshold, bool ok) {
    checks.push_back({{"name", name},
                      {"statistic", json_number(statistic)},
                      {"threshold", json_number(threshold)},
                      {"pass", ok}});
    pass = pass && ok;
  }
};

void suite_coupling(const ExperimentConfig& c, const Kernel& kernel, Report& rep) {
  const std::vector<Kernel> kernels{kernel, positive_part(kernel), canceling_kernel(c.lambda, kernel.support_length())};
  const double H = c.horizon;
  std::vector<std::size_t> interval_bad(c.validate.seeds), cumulative_bad(c.validate.seeds);
  parallel_for(c.validate.seeds, c.threads, [&](std::size_t s) {
    const CoupledRun run = simulate_coupled(kernels, c.lambda, H, c.seed + s, 0);
    const EventStream& h = run.streams[0];
    const EventStream& hp = run.streams[1];
    const EventStream& g = run.streams[2];
    for (int i = 0; i < 10; ++i) {
      const double lo = H * i / 10.0;
      for (int j = 1; j <= 10; ++j) {
        const double hi = lo + (H - lo) * j / 10.0;
        if (h.count(lo, hi) > hp.count(lo, hi)) ++interval_bad[s];
      }
    }
    for (const auto* st : {&h, &g}) {
      for (double t : st->times()) {
        if (h.count_upto(t) < g.count_upto(t)) ++cumulative_bad[s];
      }
    }
  });
  std::size_t ib = 0, cb = 0;
  for (std::size_t s = 0; s < c.validate.seeds; ++s) {
    ib += interval_bad[s];
    cb += cumulative_bad[s];
  }
  rep.add("majorant interval domination violations", static_cast<double>(ib), 0.0, ib == 0);
  rep.add("minorant cumulative domination violations", static_cast<double>(cb), 0.0, cb == 0);
}

WindowSample validation_sample(const ExperimentConfig& c, const Kernel& kernel) {
  const double L = config_window_length(c, kernel);
  WindowSample s = sample_windows(plan_for(c, kernel), L, c.validate.windows, c.threads);
  s.windows.resize(std::min(s.windows.size(), c.validate.windows));
  return s;
}

void suite_renewal(const ExperimentConfig& c, const Kernel& kernel, const CaseInfo& info, Report& rep) {
  const WindowSample s = validation_sample(c, kernel);
  const double n = static_cast<double>(s.size());
  const TestVerdict off = ks_exponential(first_offsets(s), c.lambda, c.validate.alpha);
  rep.add("first offsets KS vs Exp(lambda)", off.statistic, off.critical, off.pass);

  const auto tau = s.taus();
  const auto w = s.counts();
  const double band = 3.0 / std::sqrt(n);
  const double rt = lag1_correlation(tau);
  rep.add("lag-1 correlation of tau", rt, band, std::abs(rt) <= band);
  if (sample_variance(w) > 0.0) {
    const double rw = lag1_correlation(w);
    rep.add("lag-1 correlation of W", rw, band, std::abs(rw) <= band);
  }
  const std::size_t half = tau.size() / 2;
  const TestVerdict two = ks_two_sample(std::span(tau).first(half), std::span(tau).subspan(half), c.validate.alpha);
  rep.add("half-sample two-sample KS on tau", two.statistic, two.critical, two.pass);

  if (info.kind == KernelCase::canceling || info.kind == KernelCase::poisson) {
    const auto not_one = std::count_if(w.begin(), w.end(), [](double v) { return v != 1.0; });
    rep.add("windows with W != 1", static_cast<double>(not_one), 0.0, not_one == 0);
    // One jump per window, so tau is the wait for it plus L (= A unless overridden).
    std::vector<double> excess(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) excess[i] = tau[i] - s.window_length;
    const TestVerdict ex = ks_exponential(excess, c.lambda, c.validate.alpha);
    rep.add("tau - L KS vs Exp(lambda)", ex.statistic, ex.critical, ex.pass);
  }
}

void suite_poisson(const ExperimentConfig& c, const Kernel& kernel, const CaseInfo& info, Report& rep) {
  if (info.kind != KernelCase::delayed) throw ConfigError("suite poisson needs a delayed canceling kernel");
  const DelayedOracle o = oracle_delayed(c.lambda, info.r, info.A);
  const WindowSample s = validation_sample(c, kernel);
  std::vector<std::size_t> k(s.size());
  std::size_t ones = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    k[i] = s.windows[i].w() - 1;
    ones += k[i] == 0;
  }
  const ChiSquareResult chi = poisson_gof(k, c.lambda * info.r, c.validate.alpha);
  rep.add("W - 1 chi-square vs Poisson(lambda r) p-value", chi.p_value, c.validate.alpha, chi.pass);
  const double n = static_cast<double>(s.size());
  const double frac = static_cast<double>(ones) / n;
  const double se = std::sqrt(o.atom_mass * (1.0 - o.atom_mass) / n);
  rep.add("atom fraction W = 1 minus exp(-lambda r), in SE", (frac - o.atom_mass) / se, 3.0,
          std::abs(frac - o.atom_mass) <= 3.0 * se);
  const LimitEstimates e = lln_estimate(s);
  rep.add("m_hat minus oracle m, in SE", (e.m_hat - o.m) / e.se_m_hat, 3.0, std::abs(e.m_hat - o.m) <= 3.0 * e.se_m_hat);
}

void suite_geometric(const ExperimentConfig& c, const Kernel& kernel, Report& rep) {
  if (!kernel.is_nonpositive() || kernel.empty()) throw ConfigError("suite geometric needs a nonpositive kernel");
  const WindowSample s = validation_sample(c, kernel);
  const double n = static_cast<double>(s.size());
  const double q = -std::expm1(-c.lambda * kernel.support_length());
  for (std::size_t k = 1; k <= c.validate.max_k; ++k) {
    const auto above = std::count_if(s.windows.begin(), s.windows.end(), [k](const RenewalWindow& w) { return w.w() > k; });
    const double p = static_cast<double>(above) / n;
    const double bound = std::pow(q, static_cast<double>(k));
    const double ci = std::sqrt(std::max(p * (1.0 - p), bound * (1.0 - bound)) / n);
    rep.add("P(W > " + std::to_string(k) + ")", p, bound + 3.0 * ci, p <= bound + 3.0 * ci);
  }
}

void suite_clt(const ExperimentConfig& c, const Kernel& kernel, const CaseInfo& info, Report& rep) {
  if (c.replicas < 500) throw ConfigError("suite clt needs replicas >= 500");
  std::optional<CltReference> ref;
  switch (info.kind) {
    case KernelCase::poisson:
    case KernelCase::canceling: {
      const CancelOracle o = oracle_cancel(c.lambda, info.A);
      ref = CltReference{o.m, o.sigma2};
      break;
    }
    case KernelCase::delayed: {
      const DelayedOracle o = oracle_delayed(c.lambda, info.r, info.A);
      ref = CltReference{o.m, o.sigma2};
      break;
    }
    case KernelCase::linear: {
      const LinearOracle o = oracle_linear(c.lambda, kernel.l1());
      ref = CltReference{o.mu, o.sigma2};
      break;
    }
    case KernelCase::general: break;
  }
  const CltCheck chk = clt_normality_check(kernel, c.lambda, c.horizon, c.replicas, c.seed, ref,
                                           c.window_length, c.threads);
  rep.add(std::string("KS distance to Normal(0, sigma2") + (chk.estimated ? " estimated)" : " oracle)"),
          chk.ks_distance, c.validate.ks_max, chk.ks_distance < c.validate.ks_max);
}

}  // namespace

int cmd_validate(const ExperimentConfig& c, std::ostream& out) {
  const Kernel kernel = config_kernel(c);
  const CaseInfo info = infer_case(kernel, c.lambda);
  Report rep;
  const std::string& suite = c.validate.suite;
  if (suite == "coupling") suite_coupling(c, kernel, rep);
  else if (suite == "renewal") suite_renewal(c, kernel, info, rep);
  else if (suite == "poisson") suite_poisson(c, kernel, info, rep);
  else if (suite == "geometric") suite_geometric(c, kernel, rep);
  else if (suite == "clt") suite_clt(c, kernel, info, rep);
  else throw ConfigError("unknown suite '" + suite + "' (coupling, renewal, clt, poisson, geometric)");

  const ojson report{{"suite", suite}, {"case", to_string(info.kind)}, {"checks", rep.checks}, {"pass", rep.pass}};
  const fs::path dir = c.output_dir;
  write_json(dir / "report.json", report);
  out << report.dump(2) << '\n';
  return rep.pass ? kExitOk : kExitFail;
}

int cmd_deviations(const ExperimentConfig& c, std::ostream& out) {
  const Kernel kernel = config_kernel(c);
  const CaseInfo info = infer_case(kernel, c.lambda);

  double m = 0.0;
  double th = kInf;
  switch (info.kind) {
    case KernelCase::poisson:
    case KernelCase::canceling: m = oracle_cancel(c.lambda, info.A).m; break;
    case KernelCase::delayed: m = oracle_delayed(c.lambda, info.r, info.A).m; break;
    case KernelCase::linear:
      m = oracle_linear(c.lambda, kernel.l1()).mu;
      th = theta0(kernel, c.lambda).value;
      break;
    case KernelCase::general: th = theta0(kernel, c.lambda).value; break;
  }
  if (c.deviations.theta0) th = *c.deviations.theta0;

  std::function<double(double)> J;
  std::optional<CramerSolver> solver;
  if (c.rate.source == "oracle") {
    J = closed_form_rate(info, c.lambda, kernel);
  } else {
    if (c.rate.source == "analytic") {
      solver.emplace(analytic_surface(info, c.lambda), CramerOptions{40.0, 64, c.threads});
    } else {
      const WindowSample sample = empirical_sample(c, kernel);
      if (info.kind == KernelCase::general) m = lln_estimate(sample).m_hat;
      solver.emplace(empirical_surface(sample, kernel, c.lambda), CramerOptions{40.0, 64, c.threads});
    }
    J = [&solver](double z) { return rate_J(*solver, z).value; };
  }
  if (!(m > 0.0)) throw ConfigError("the LLN mean is unknown for this kernel; use source empirical");

  const DeviationBounds d = deviation_bounds(J, m, c.deviations.a, th, c.deviations.kappa, c.deviations.kappa_prime);
  const ojson result{{"m", m},
                     {"a", c.deviations.a},
                     {"theta0", json_number(th)},
                     {"kappa", c.deviations.kappa},
                     {"kappa_prime", c.deviations.kappa_prime},
                     {"source", c.rate.source},
                     {"above", {{"exponent", json_number(d.above)},
                                {"rate_term", json_number(d.above_rate)},
                                {"linear_term", json_number(d.above_linear)}}},
                     {"below", {{"exponent", json_number(d.below)},
                                {"rate_term", json_number(d.below_rate)},
                                {"linear_term", json_number(d.below_linear)}}}};
  const fs::path dir = c.output_dir;
  write_json(dir / "deviations.json", result);
  out << result.dump(2) << '\n';
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hawkes processes with signed compactly supported kernels: simulation, renewal windows, limit "
               "constants and rate functions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::string> kernel, output, coupling, source, suite, theta0_text;
  std::optional<double> lambda, horizon, window_length, z_min, z_max, z_step, alpha, ks_max, a, kappa, kappa_prime;
  std::optional<std::uint64_t> seed, first_replica;
  std::optional<std::size_t> replicas, windows, seeds;
  std::optional<int> threads;
  std::vector<std::string> inputs;

  app.add_option("-c,--config", config_path, "JSON config file");
  app.add_option("--kernel", kernel, "segments as 'start,end,value;...'");
  app.add_option("--lambda", lambda);
  app.add_option("--horizon", horizon);
  app.add_option("--seed", seed);
  app.add_option("--replicas", replicas);
  app.add_option("--first-replica", first_replica);
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");
  app.add_option("-o,--output", output, "output directory");
  app.add_option("--coupling", coupling, "none | majorant | minorant | both");
  app.add_option("--window-length", window_length);
  app.add_option("-i,--input", inputs, "event CSV files (instead of simulating)");
  app.add_option("--source", source, "oracle | analytic | empirical");
  app.add_option("--z-min", z_min);
  app.add_option("--z-max", z_max);
  app.add_option("--z-step", z_step);
  app.add_option("--windows", windows, "window count for empirical surfaces / validation");
  app.add_option("--suite", suite, "coupling | renewal | clt | poisson | geometric");
  app.add_option("--alpha", alpha);
  app.add_option("--seeds", seeds);
  app.add_option("--ks-max", ks_max);
  app.add_option("--a", a, "deviation size");
  app.add_option("--kappa", kappa);
  app.add_option("--kappa-prime", kappa_prime);
  app.add_option("--theta0", theta0_text, "override theta0 (number or inf)");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"simulate", "simulate replicas (optionally coupled) and write event CSVs"},
      {"decompose", "split event streams into renewal windows"},
      {"estimate", "LLN / CLT constants from pooled renewal windows"},
      {"rate", "tabulate the rate function J"},
      {"oracle", "closed-form constants for recognised kernels"},
      {"validate", "run an invariant suite; exit 1 on failure"},
      {"deviations", "upper deviation exponents"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (kernel) c.kernel = parse_kernel_spec(*kernel);
    if (lambda) c.lambda = *lambda;
    if (horizon) c.horizon = *horizon;
    if (seed) c.seed = *seed;
    if (replicas) c.replicas = *replicas;
    if (first_replica) c.first_replica = *first_replica;
    if (threads) c.threads = *threads;
    if (output) c.output_dir = *output;
    if (coupling) c.coupling = *coupling;
    if (window_length) c.window_length = *window_length;
    if (!inputs.empty()) c.inputs = inputs;
    if (source) c.rate.source = *source;
    if (z_min) c.rate.z_min = *z_min;
    if (z_max) c.rate.z_max = *z_max;
    if (z_step) c.rate.z_step = *z_step;
    if (windows) {
      c.rate.windows = *windows;
      c.validate.windows = *windows;
    }
    if (suite) c.validate.suite = *suite;
    if (alpha) c.validate.alpha = *alpha;
    if (seeds) c.validate.seeds = *seeds;
    if (ks_max) c.validate.ks_max = *ks_max;
    if (a) c.deviations.a = *a;
    if (kappa) c.deviations.kappa = *kappa;
    if (kappa_prime) c.deviations.kappa_prime = *kappa_prime;
    if (theta0_text) {
      try {
        c.deviations.theta0 = *theta0_text == "inf" ? kInf : std::stod(*theta0_text);
      } catch (const std::exception&) {
        throw ConfigError("--theta0 must be a number or inf");
      }
    }
    check_config(c);

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "simulate") return cmd_simulate(c, out);
    if (cmd == "decompose") return cmd_decompose(c, out);
    if (cmd == "estimate") return cmd_estimate(c, out, err);
    if (cmd == "rate") return cmd_rate(c, out);
    if (cmd == "oracle") return cmd_oracle(c, out);
    if (cmd == "validate") return cmd_validate(c, out);
    return cmd_deviations(c, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace hawkes
