#include "hawkes/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hawkes/io.hpp"

namespace hawkes {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& into, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    into = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

double to_number(const json& v, const std::string& what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
  }
  throw ConfigError(what + " must be a number");
}

std::vector<Segment> read_kernel(const json& v) {
  if (v.is_string()) return parse_kernel_spec(v.get<std::string>());
  if (!v.is_array()) throw ConfigError("kernel must be an array of [start, end, value] triples");
  std::vector<Segment> out;
  for (const auto& item : v) {
    if (!item.is_array() || item.size() != 3) throw ConfigError("kernel entries must be [start, end, value]");
    out.push_back({to_number(item[0], "kernel start"), to_number(item[1], "kernel end"),
                   to_number(item[2], "kernel value")});
  }
  return out;
}

}  // namespace

std::vector<Segment> parse_kernel_spec(const std::string& spec) {
  std::vector<Segment> out;
  std::stringstream all(spec);
  std::string piece;
  while (std::getline(all, piece, ';')) {
    if (piece.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream one(piece);
    std::string field;
    std::vector<double> v;
    while (std::getline(one, field, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(field, &used));
        if (field.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ConfigError("bad kernel number '" + field + "'");
      }
    }
    if (v.size() != 3) throw ConfigError("kernel segment '" + piece + "' needs start,end,value");
    out.push_back({v[0], v[1], v[2]});
  }
  return out;
}

ExperimentConfig config_from_json(const json& doc) {
  reject_unknown(doc,
                 {"kernel", "lambda", "horizon", "seed", "replicas", "first_replica", "threads", "output_dir",
                  "coupling", "window_length", "inputs", "rate", "validate", "deviations"},
                 "config");
  ExperimentConfig c;
  if (doc.contains("kernel")) c.kernel = read_kernel(doc.at("kernel"));
  read(doc, "lambda", c.lambda, "config");
  read(doc, "horizon", c.horizon, "config");
  read(doc, "seed", c.seed, "config");
  read(doc, "replicas", c.replicas, "config");
  read(doc, "first_replica", c.first_replica, "config");
  read(doc, "threads", c.threads, "config");
  read(doc, "output_dir", c.output_dir, "config");
  read(doc, "coupling", c.coupling, "config");
  read(doc, "window_length", c.window_length, "config");
  read(doc, "inputs", c.inputs, "config");

  if (doc.contains("rate")) {
    const auto& r = doc.at("rate");
    reject_unknown(r, {"source", "z_min", "z_max", "z_step", "windows"}, "rate");
    read(r, "source", c.rate.source, "rate");
    read(r, "z_min", c.rate.z_min, "rate");
    read(r, "z_max", c.rate.z_max, "rate");
    read(r, "z_step", c.rate.z_step, "rate");
    read(r, "windows", c.rate.windows, "rate");
  }
  if (doc.contains("validate")) {
    const auto& v = doc.at("validate");
    reject_unknown(v, {"suite", "alpha", "seeds", "windows", "ks_max", "max_k"}, "validate");
    read(v, "suite", c.validate.suite, "validate");
    read(v, "alpha", c.validate.alpha, "validate");
    read(v, "seeds", c.validate.seeds, "validate");
    read(v, "windows", c.validate.windows, "validate");
    read(v, "ks_max", c.validate.ks_max, "validate");
    read(v, "max_k", c.validate.max_k, "validate");
  }
  if (doc.contains("deviations")) {
    const auto& d = doc.at("deviations");
    reject_unknown(d, {"a", "kappa", "kappa_prime", "theta0"}, "deviations");
    read(d, "a", c.deviations.a, "deviations");
    read(d, "kappa", c.deviations.kappa, "deviations");
    read(d, "kappa_prime", c.deviations.kappa_prime, "deviations");
    if (d.contains("theta0")) c.deviations.theta0 = to_number(d.at("theta0"), "deviations.theta0");
  }
  check_config(c);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  auto kernel = nlohmann::ordered_json::array();
  for (const auto& s : c.kernel) kernel.push_back({s.start, s.end, s.value});
  j["kernel"] = kernel;
  j["lambda"] = c.lambda;
  j["horizon"] = c.horizon;
  j["seed"] = c.seed;
  j["replicas"] = c.replicas;
  j["first_replica"] = c.first_replica;
  j["threads"] = c.threads;
  j["output_dir"] = c.output_dir;
  j["coupling"] = c.coupling;
  j["window_length"] = c.window_length;
  j["inputs"] = c.inputs;
  j["rate"] = {{"source", c.rate.source},
               {"z_min", c.rate.z_min},
               {"z_max", c.rate.z_max},
               {"z_step", c.rate.z_step},
               {"windows", c.rate.windows}};
  j["validate"] = {{"suite", c.validate.suite},     {"alpha", c.validate.alpha},
                   {"seeds", c.validate.seeds},     {"windows", c.validate.windows},
                   {"ks_max", c.validate.ks_max},   {"max_k", c.validate.max_k}};
  nlohmann::ordered_json dev = {
      {"a", c.deviations.a}, {"kappa", c.deviations.kappa}, {"kappa_prime", c.deviations.kappa_prime}};
  if (c.deviations.theta0) {
    const double t = *c.deviations.theta0;
    dev["theta0"] = std::isfinite(t) ? nlohmann::ordered_json(t) : nlohmann::ordered_json("inf");
  }
  j["deviations"] = dev;
  return j;
}

void check_config(const ExperimentConfig& c) {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(std::isfinite(c.lambda) && c.lambda > 0.0, "lambda must be positive");
  need(std::isfinite(c.horizon) && c.horizon > 0.0, "horizon must be positive");
  need(c.replicas >= 1, "replicas must be >= 1");
  need(c.threads >= 0, "threads must be >= 0");
  need(c.coupling == "none" || c.coupling == "majorant" || c.coupling == "minorant" || c.coupling == "both",
       "coupling must be none, majorant, minorant or both");
  need(std::isfinite(c.window_length) && c.window_length >= 0.0, "window_length must be >= 0");
  need(c.rate.source == "oracle" || c.rate.source == "analytic" || c.rate.source == "empirical",
       "rate.source must be oracle, analytic or empirical");
  need(c.rate.z_min > 0.0 && c.rate.z_max >= c.rate.z_min && c.rate.z_step > 0.0,
       "rate grid needs 0 < z_min <= z_max and z_step > 0");
  need(c.validate.alpha > 0.0 && c.validate.alpha < 1.0, "validate.alpha must lie in (0, 1)");
  need(c.validate.seeds >= 1, "validate.seeds must be >= 1");
  need(c.validate.windows >= 2, "validate.windows must be >= 2");
  need(c.validate.ks_max > 0.0, "validate.ks_max must be positive");
  need(c.deviations.a > 0.0, "deviations.a must be positive");
  if (c.deviations.theta0) need(*c.deviations.theta0 > 0.0, "deviations.theta0 must be positive");
  config_kernel(c);
}

Kernel config_kernel(const ExperimentConfig& c) {
  try {
    return Kernel(c.kernel);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("kernel: ") + e.what());
  }
}

double config_window_length(const ExperimentConfig& c, const Kernel& kernel) {
  const double L = c.window_length > 0.0 ? c.window_length : kernel.support_length();
  if (!(L > 0.0)) throw ConfigError("window_length is required when the kernel is empty");
  if (L < kernel.support_length()) throw ConfigError("window_length must be >= the kernel support length");
  return L;
}

}  // namespace hawkes
