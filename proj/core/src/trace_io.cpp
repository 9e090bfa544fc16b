#include "veisim/trace_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "veisim/errors.hpp"
#include "veisim/numfmt.hpp"
#include "veisim/scenario_io.hpp"

namespace veisim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v) { return format_double(v); }

std::string fmt_ttc(double v) { return std::isinf(v) ? "inf" : fmt(v); }

// JSON value for quantities that may be infinite (JSON has no inf literal).
ordered_json json_number_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

ordered_json report_object(const SimTrace& trace, const SafetyReport& report) {
  ordered_json j;
  j["variant"] = trace.variant;
  j["collided"] = report.collided;
  j["safety_index"] = report.index;
  j["zone_seconds"] = {{"safe", report.zones.safe()},
                       {"attention", report.zones.attention()},
                       {"alert", report.zones.alert()},
                       {"collision", report.zones.collision()}};
  j["speed_mean"] = report.speed_mean;
  j["speed_std"] = report.speed_std;
  j["min_gap"] = json_number_or_inf(report.min_gap);
  j["min_ttc"] = json_number_or_inf(report.min_ttc);
  j["frames"] = trace.frames.size();
  j["dt"] = trace.dt;
  return j;
}

}  // namespace

std::string trace_csv(const SimTrace& trace) {
  std::ostringstream out;
  out << "t,ego_x,ego_y,ego_heading,ego_v,ego_a,cap_mode,esc_id,esc_x,esc_y,esc_vx,esc_vy,"
         "f_des_x,f_des_y,f_veh_x,f_veh_y,gap,ttc,zone,collided\n";
  for (const auto& frame : trace.frames) {
    std::string ego_cols = fmt(frame.t) + ',' + fmt(frame.ego_pose.position.x) + ',' +
                           fmt(frame.ego_pose.position.y) + ',' + fmt(frame.ego_pose.heading) +
                           ',' + fmt(frame.ego_speed) + ',' + fmt(frame.ego_accel) + ',' +
                           cap_mode_name(frame.cap_mode);
    if (frame.scooters.empty()) {
      // 12 empty scooter columns plus the collided column: 13 separators
      out << ego_cols << ",,,,,,,,,,,,," << (frame.collided ? '1' : '0') << "\n";
      continue;
    }
    for (const auto& s : frame.scooters) {
      out << ego_cols << ',' << s.id << ',' << fmt(s.position.x) << ',' << fmt(s.position.y)
          << ',' << fmt(s.velocity.x) << ',' << fmt(s.velocity.y) << ',' << fmt(s.f_des.x)
          << ',' << fmt(s.f_des.y) << ',' << fmt(s.f_veh.x) << ',' << fmt(s.f_veh.y) << ','
          << fmt(s.gap) << ',' << fmt_ttc(s.ttc) << ',' << zone_name(s.zone) << ','
          << (frame.collided ? '1' : '0') << "\n";
    }
  }
  return out.str();
}

std::string report_json(const SimTrace& trace, const SafetyReport& report) {
  return report_object(trace, report).dump(2) + "\n";
}

std::string summary_json(std::span<const SimTrace> traces,
                         std::span<const SafetyReport> reports) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < traces.size() && i < reports.size(); ++i) {
    arr.push_back(report_object(traces[i], reports[i]));
  }
  return arr.dump(2) + "\n";
}

std::uint64_t config_hash(const ScenarioSpec& spec) {
  const std::string canonical = write_scenario(spec);
  std::uint64_t hash = 14695981039346656037ull;  // FNV-1a 64 offset basis
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 1099511628211ull;  // FNV-1a 64 prime
  }
  return hash;
}

std::string manifest_json(const RunManifest& manifest) {
  ordered_json j;
  j["tool"] = "veisim";
  j["version"] = kToolVersion;
  j["command"] = manifest.command;
  j["scenario"] = manifest.scenario_path;
  if (!manifest.variant.empty()) j["variant"] = manifest.variant;
  j["out_dir"] = manifest.out_dir;
  if (manifest.dt_override) j["dt_override"] = *manifest.dt_override;
  if (manifest.duration_override) j["duration_override"] = *manifest.duration_override;
  j["config_hash"] = format_hex64(manifest.config_hash);
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace veisim
