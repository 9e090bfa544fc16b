#include "veisim/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "veisim/errors.hpp"
#include "veisim/numfmt.hpp"

namespace veisim {

namespace {

std::string fmt(double v) { return format_double(v); }

double to_double(const std::string& text, const std::string& source, int line) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(source, line, "not a finite number: '" + text + "'");
  }
  return value;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct KeyValue {
  std::string key;
  std::string value;
};

KeyValue split_key_value(const std::string& line, const std::string& source, int lineno) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw ParseError(source, lineno, "expected 'key = value', got '" + line + "'");
  }
  KeyValue kv{trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
  if (kv.key.empty()) throw ParseError(source, lineno, "empty key");
  return kv;
}

}  // namespace

std::string write_scenario(const ScenarioSpec& spec) {
  std::ostringstream out;
  out << "# veisim scenario\n";
  out << "schema = " << kScenarioSchema << "\n";
  out << "name = " << spec.name << "\n";
  out << "dt = " << fmt(spec.dt) << "\n";
  out << "duration = " << fmt(spec.duration) << "\n";
  out << "timing_shift = " << fmt(spec.timing_shift) << "\n";
  out << "origin_lat = " << fmt(spec.origin.lat) << "\n";
  out << "origin_lon = " << fmt(spec.origin.lon) << "\n";
  out << "ego_cruise_speed = " << fmt(spec.ego_cruise_speed) << "\n";

  out << "\n[bounds]\n";
  out << "min_lat = " << fmt(spec.bounds.min.lat) << "\n";
  out << "min_lon = " << fmt(spec.bounds.min.lon) << "\n";
  out << "max_lat = " << fmt(spec.bounds.max.lat) << "\n";
  out << "max_lon = " << fmt(spec.bounds.max.lon) << "\n";
  out << "margin_m = " << fmt(spec.bounds.margin_m) << "\n";

  out << "\n[rider]\n";
  out << "mass = " << fmt(spec.sfm.mass) << "\n";
  out << "v_max = " << fmt(spec.sfm.v_max) << "\n";
  out << "v0 = " << fmt(spec.sfm.v0) << "\n";
  out << "sigma_des = " << fmt(spec.sfm.sigma_des) << "\n";
  out << "epsilon = " << fmt(spec.sfm.epsilon) << "\n";
  out << "k_des = " << fmt(spec.sfm.k_des) << "\n";
  out << "a_veh = " << fmt(spec.sfm.a_veh) << "\n";
  out << "b_veh = " << fmt(spec.sfm.b_veh) << "\n";
  out << "force_scale = " << fmt(spec.sfm.force_scale) << "\n";

  out << "\n[cap]\n";
  out << "v_des = " << fmt(spec.cap.v_des) << "\n";
  out << "t_safe = " << fmt(spec.cap.t_safe) << "\n";
  out << "d_buf = " << fmt(spec.cap.d_buf) << "\n";
  out << "a_min = " << fmt(spec.cap.a_min) << "\n";
  out << "kp = " << fmt(spec.cap.kp) << "\n";
  out << "ki = " << fmt(spec.cap.ki) << "\n";
  out << "kd = " << fmt(spec.cap.kd) << "\n";
  out << "corridor_half_width = " << fmt(spec.cap.corridor_half_width) << "\n";
  out << "hysteresis = " << fmt(spec.cap.hysteresis) << "\n";
  out << "a_max_cruise = " << fmt(spec.cap.a_max_cruise) << "\n";
  out << "integral_clamp = " << fmt(spec.cap.integral_clamp) << "\n";

  out << "\n[geometry]\n";
  out << "ego_length = " << fmt(spec.geometry.ego_length) << "\n";
  out << "ego_width = " << fmt(spec.geometry.ego_width) << "\n";
  out << "scooter_radius = " << fmt(spec.geometry.scooter_radius) << "\n";

  for (const auto& track : spec.tracks) {
    out << "\n[track]\n";
    out << "id = " << track.agent_id << "\n";
    out << "kind = " << (track.kind == AgentKind::Ego ? "ego" : "escooter") << "\n";
    out << "keyframes = " << track.keyframes.size() << "\n";
    for (const auto& kf : track.keyframes) {
      out << fmt(kf.t) << ' ' << fmt(kf.pose.position.x) << ' ' << fmt(kf.pose.position.y)
          << ' ' << fmt(kf.pose.heading) << "\n";
    }
  }
  return out.str();
}

void write_scenario_file(const ScenarioSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << write_scenario(spec);
  if (!out) throw Error("failed writing '" + path + "'");
}

ScenarioSpec parse_scenario(std::istream& in, const std::string& source) {
  ScenarioSpec spec;
  spec.tracks.clear();

  enum class Section { Top, Bounds, Rider, Cap, Geometry, Track };
  Section section = Section::Top;
  AgentTrack current;       // Track section under construction
  long pending_rows = -1;   // keyframe rows still expected; -1 = count not seen
  bool saw_schema = false;
  bool cap_v_des_explicit = false;
  bool saw_cruise_speed = false;

  auto flush_track = [&](int lineno) {
    if (section != Section::Track) return;
    if (pending_rows < 0) {
      throw ParseError(source, lineno,
                       "track '" + current.agent_id + "': missing 'keyframes' count");
    }
    if (pending_rows > 0) {
      throw ParseError(source, lineno,
                       "track '" + current.agent_id + "': " + std::to_string(pending_rows) +
                           " keyframe row(s) missing");
    }
    spec.tracks.push_back(std::move(current));
    current = AgentTrack{};
    pending_rows = -1;
  };

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, lineno, "unterminated section header");
      flush_track(lineno);
      const std::string name = line.substr(1, line.size() - 2);
      if (name == "bounds") section = Section::Bounds;
      else if (name == "rider") section = Section::Rider;
      else if (name == "cap") section = Section::Cap;
      else if (name == "geometry") section = Section::Geometry;
      else if (name == "track") {
        section = Section::Track;
        current = AgentTrack{};
        pending_rows = -1;
      } else {
        throw ParseError(source, lineno, "unknown section '[" + name + "]'");
      }
      continue;
    }

    if (section == Section::Track && pending_rows > 0) {
      // keyframe row: "t x y heading"
      std::istringstream row(line);
      Keyframe kf;
      std::string ta, xa, ya, ha, extra;
      if (!(row >> ta >> xa >> ya >> ha) || (row >> extra)) {
        throw ParseError(source, lineno, "keyframe row needs exactly 4 numbers");
      }
      kf.t = to_double(ta, source, lineno);
      kf.pose.position.x = to_double(xa, source, lineno);
      kf.pose.position.y = to_double(ya, source, lineno);
      kf.pose.heading = to_double(ha, source, lineno);
      current.keyframes.push_back(kf);
      --pending_rows;
      continue;
    }

    const KeyValue kv = split_key_value(line, source, lineno);
    auto num = [&] { return to_double(kv.value, source, lineno); };

    switch (section) {
      case Section::Top:
        if (kv.key == "schema") {
          if (kv.value != std::to_string(kScenarioSchema)) {
            throw ParseError(source, lineno, "unsupported schema '" + kv.value + "'");
          }
          saw_schema = true;
        } else if (kv.key == "name") spec.name = kv.value;
        else if (kv.key == "dt") spec.dt = num();
        else if (kv.key == "duration") spec.duration = num();
        else if (kv.key == "timing_shift") spec.timing_shift = num();
        else if (kv.key == "origin_lat") spec.origin.lat = num();
        else if (kv.key == "origin_lon") spec.origin.lon = num();
        else if (kv.key == "ego_cruise_speed") {
          spec.ego_cruise_speed = num();
          saw_cruise_speed = true;
        } else throw ParseError(source, lineno, "unknown key '" + kv.key + "'");
        break;
      case Section::Bounds:
        if (kv.key == "min_lat") spec.bounds.min.lat = num();
        else if (kv.key == "min_lon") spec.bounds.min.lon = num();
        else if (kv.key == "max_lat") spec.bounds.max.lat = num();
        else if (kv.key == "max_lon") spec.bounds.max.lon = num();
        else if (kv.key == "margin_m") spec.bounds.margin_m = num();
        else throw ParseError(source, lineno, "unknown key '" + kv.key + "' in [bounds]");
        break;
      case Section::Rider:
        if (kv.key == "mass") spec.sfm.mass = num();
        else if (kv.key == "v_max") spec.sfm.v_max = num();
        else if (kv.key == "v0") spec.sfm.v0 = num();
        else if (kv.key == "sigma_des") spec.sfm.sigma_des = num();
        else if (kv.key == "epsilon") spec.sfm.epsilon = num();
        else if (kv.key == "k_des") spec.sfm.k_des = num();
        else if (kv.key == "a_veh") spec.sfm.a_veh = num();
        else if (kv.key == "b_veh") spec.sfm.b_veh = num();
        else if (kv.key == "force_scale") spec.sfm.force_scale = num();
        else throw ParseError(source, lineno, "unknown key '" + kv.key + "' in [rider]");
        break;
      case Section::Cap:
        if (kv.key == "v_des") {
          spec.cap.v_des = num();
          cap_v_des_explicit = true;
        } else if (kv.key == "t_safe") spec.cap.t_safe = num();
        else if (kv.key == "d_buf") spec.cap.d_buf = num();
        else if (kv.key == "a_min") spec.cap.a_min = num();
        else if (kv.key == "kp") spec.cap.kp = num();
        else if (kv.key == "ki") spec.cap.ki = num();
        else if (kv.key == "kd") spec.cap.kd = num();
        else if (kv.key == "corridor_half_width") spec.cap.corridor_half_width = num();
        else if (kv.key == "hysteresis") spec.cap.hysteresis = num();
        else if (kv.key == "a_max_cruise") spec.cap.a_max_cruise = num();
        else if (kv.key == "integral_clamp") spec.cap.integral_clamp = num();
        else throw ParseError(source, lineno, "unknown key '" + kv.key + "' in [cap]");
        break;
      case Section::Geometry:
        if (kv.key == "ego_length") spec.geometry.ego_length = num();
        else if (kv.key == "ego_width") spec.geometry.ego_width = num();
        else if (kv.key == "scooter_radius") spec.geometry.scooter_radius = num();
        else throw ParseError(source, lineno, "unknown key '" + kv.key + "' in [geometry]");
        break;
      case Section::Track:
        if (kv.key == "id") current.agent_id = kv.value;
        else if (kv.key == "kind") {
          if (kv.value == "ego") current.kind = AgentKind::Ego;
          else if (kv.value == "escooter") current.kind = AgentKind::Escooter;
          else throw ParseError(source, lineno, "unknown track kind '" + kv.value + "'");
        } else if (kv.key == "keyframes") {
          pending_rows = static_cast<long>(num());
          if (pending_rows < 0) throw ParseError(source, lineno, "keyframes must be >= 0");
          current.keyframes.reserve(static_cast<std::size_t>(pending_rows));
        } else throw ParseError(source, lineno, "unknown key '" + kv.key + "' in [track]");
        break;
    }
  }
  flush_track(lineno);

  if (!saw_schema) throw ParseError(source, 1, "missing 'schema' key");
  // Single cruise setpoint: ego_cruise_speed doubles as the CAP v_des unless
  // the [cap] section pins it explicitly.
  if (saw_cruise_speed && !cap_v_des_explicit) spec.cap.v_des = spec.ego_cruise_speed;

  validate_or_throw(spec);
  return spec;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_scenario(in, path);
}

}  // namespace veisim
