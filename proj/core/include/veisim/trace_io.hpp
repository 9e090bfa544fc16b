#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "veisim/engine.hpp"
#include "veisim/metrics.hpp"

namespace veisim {

inline constexpr const char* kToolVersion = "0.1.0";

// trace.csv text: header plus one row per (frame, scooter); frames without
// scooters emit a single row with empty scooter columns. Doubles use
// shortest round-trip formatting; infinite ttc serializes as "inf".
std::string trace_csv(const SimTrace& trace);

// report.json text for one run (keys in fixed order, trailing newline).
std::string report_json(const SimTrace& trace, const SafetyReport& report);

// summary.json text: array of per-variant report objects in the given order.
std::string summary_json(std::span<const SimTrace> traces,
                         std::span<const SafetyReport> reports);

// FNV-1a 64-bit over the canonical scenario serialization; covers every
// parameter that affects the trace.
std::uint64_t config_hash(const ScenarioSpec& spec);

struct RunManifest {
  std::string command;  // "run" or "matrix"
  std::string scenario_path;
  std::string variant;  // empty for matrix
  std::string out_dir;
  std::optional<double> dt_override;
  std::optional<double> duration_override;
  std::uint64_t config_hash = 0;
};

// manifest.json text. Deliberately timestamp-free: tool version + config
// hash are the determinism attestation.
std::string manifest_json(const RunManifest& manifest);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace veisim
