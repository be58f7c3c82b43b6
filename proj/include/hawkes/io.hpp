#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hawkes/engine.hpp"
#include "hawkes/rates.hpp"
#include "hawkes/renewal.hpp"

namespace hawkes {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr int kEventsSchema = 1;
inline constexpr int kWindowsSchema = 1;
inline constexpr int kRateSchema = 1;
inline constexpr int kManifestSchema = 1;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// %.17g: round-trips every double.
std::string format_double(double v);

struct EventsHeader {
  double lambda = 0.0;
  std::string kernel_hash;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  double horizon = 0.0;
  std::string role = "main";
};

struct EventsFile {
  EventsHeader header;
  EventStream stream;
};

void write_events_csv(const std::filesystem::path& path, const EventStream& stream, const EventsHeader& header);
EventsFile read_events_csv(const std::filesystem::path& path);

/// index,tau,w,first_offset rows plus a JSON sidecar (path + ".json") holding
/// the window length, horizon, discarded tail and provenance.
void write_windows_csv(const std::filesystem::path& path, const WindowSample& sample);

/// z,J,provenance,flag rows.
void write_rate_csv(const std::filesystem::path& path, const RateCurve& curve);

/// JSON number, or the strings "inf" / "-inf" / "nan" (JSON has no such literals).
nlohmann::ordered_json json_number(double v);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

}  // namespace hawkes
