#include "hawkes/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hawkes {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

double parse_double(const std::string& s, const fs::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("bad number '" + s + "' in " + path.string());
  }
}

std::uint64_t parse_u64(const std::string& s, const fs::path& path) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw IoError("bad integer '" + s + "' in " + path.string());
  return v;
}

}  // namespace

void write_events_csv(const fs::path& path, const EventStream& stream, const EventsHeader& header) {
  auto out = open_out(path);
  out << "# hawkes events v" << kEventsSchema << '\n'
      << "# lambda=" << format_double(header.lambda) << '\n'
      << "# kernel_hash=" << header.kernel_hash << '\n'
      << "# seed=" << header.seed << '\n'
      << "# replica=" << header.replica << '\n'
      << "# horizon=" << format_double(header.horizon) << '\n'
      << "# role=" << header.role << '\n'
      << "time\n";
  for (double t : stream.times()) out << format_double(t) << '\n';
  finish(out, path);
}

EventsFile read_events_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  EventsFile f;
  bool have_horizon = false, have_column = false;
  std::vector<double> times;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2), value = line.substr(eq + 1);
      if (key == "lambda") f.header.lambda = parse_double(value, path);
      else if (key == "kernel_hash") f.header.kernel_hash = value;
      else if (key == "seed") f.header.seed = parse_u64(value, path);
      else if (key == "replica") f.header.replica = parse_u64(value, path);
      else if (key == "role") f.header.role = value;
      else if (key == "horizon") {
        f.header.horizon = parse_double(value, path);
        have_horizon = true;
      }
      continue;
    }
    if (!have_column) {
      if (line != "time") throw IoError("expected column header 'time' in " + path.string());
      have_column = true;
      continue;
    }
    times.push_back(parse_double(line, path));
  }
  if (!have_horizon) throw IoError("missing '# horizon=' header in " + path.string());
  try {
    f.stream = EventStream(std::move(times), f.header.horizon);
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  return f;
}

void write_windows_csv(const fs::path& path, const WindowSample& sample) {
  auto out = open_out(path);
  out << "index,tau,w,first_offset\n";
  for (std::size_t i = 0; i < sample.windows.size(); ++i) {
    const auto& w = sample.windows[i];
    out << i << ',' << format_double(w.tau()) << ',' << w.w() << ',' << format_double(w.first_offset()) << '\n';
  }
  finish(out, path);

  nlohmann::ordered_json side;
  side["schema_version"] = kWindowsSchema;
  side["n_windows"] = sample.size();
  side["window_length"] = sample.window_length;
  side["horizon"] = sample.horizon;
  side["discarded_tail_count"] = sample.discarded_tail_count;
  side["lambda"] = sample.provenance.lambda;
  side["kernel"] = sample.provenance.kernel;
  side["kernel_hash"] = sample.provenance.kernel_hash;
  side["seed"] = sample.provenance.seed;
  side["replica"] = sample.provenance.replica_index;
  write_json(fs::path(path.string() + ".json"), side);
}

void write_rate_csv(const fs::path& path, const RateCurve& curve) {
  auto out = open_out(path);
  out << "z,J,provenance,flag\n";
  const std::string prov = to_string(curve.provenance);
  for (std::size_t i = 0; i < curve.z.size(); ++i) {
    out << format_double(curve.z[i]) << ',' << format_double(curve.J[i]) << ',' << prov << ','
        << (curve.flag[i] ? 1 : 0) << '\n';
  }
  finish(out, path);
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

void write_json(const fs::path& path, const nlohmann::ordered_json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  finish(out, path);
}

}  // namespace hawkes
