#include "veisim/scenario.hpp"

#include <cmath>

#include "veisim/errors.hpp"

namespace veisim {

const AgentTrack* ScenarioSpec::ego_track() const {
  for (const auto& t : tracks) {
    if (t.kind == AgentKind::Ego) return &t;
  }
  return nullptr;
}

std::vector<const AgentTrack*> ScenarioSpec::scooter_tracks() const {
  std::vector<const AgentTrack*> out;
  for (const auto& t : tracks) {
    if (t.kind == AgentKind::Escooter) out.push_back(&t);
  }
  return out;
}

std::vector<std::string> validate(const ScenarioSpec& spec) {
  std::vector<std::string> issues;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) issues.push_back(msg);
  };

  require(std::isfinite(spec.dt) && spec.dt > 0.0, "dt: must be > 0");
  require(std::isfinite(spec.duration) && spec.duration > 0.0, "duration: must be > 0");
  require(std::isfinite(spec.timing_shift), "timing_shift: must be finite");
  require(std::isfinite(spec.ego_cruise_speed) && spec.ego_cruise_speed >= 0.0,
          "ego_cruise_speed: must be >= 0");

  int ego_count = 0;
  for (std::size_t i = 0; i < spec.tracks.size(); ++i) {
    const AgentTrack& track = spec.tracks[i];
    const std::string path =
        "tracks[" + std::to_string(i) + "] (" + track.agent_id + ")";
    if (track.kind == AgentKind::Ego) ++ego_count;
    require(!track.agent_id.empty(), path + ": agent_id is empty");
    for (std::size_t k = 1; k < track.keyframes.size(); ++k) {
      if (!(track.keyframes[k].t > track.keyframes[k - 1].t)) {
        issues.push_back(path + ": keyframe times must be strictly increasing");
        break;
      }
    }
  }
  require(ego_count == 1,
          "tracks: expected exactly 1 ego track, got " + std::to_string(ego_count));
  if (const AgentTrack* ego = spec.ego_track()) {
    require(ego->simulable(), "tracks: ego track needs at least 2 keyframes");
  }

  require(spec.geometry.ego_length > 0.0, "geometry.ego_length: must be > 0");
  require(spec.geometry.ego_width > 0.0, "geometry.ego_width: must be > 0");
  require(spec.geometry.scooter_radius > 0.0, "geometry.scooter_radius: must be > 0");

  require(spec.sfm.mass > 0.0, "sfm.mass: must be > 0");
  require(spec.sfm.v_max > 0.0, "sfm.v_max: must be > 0");
  require(spec.sfm.sigma_des > 0.0, "sfm.sigma_des: must be > 0");
  require(spec.sfm.epsilon > 0.0, "sfm.epsilon: must be > 0");
  require(spec.sfm.k_des >= 0.0, "sfm.k_des: must be >= 0");
  require(spec.sfm.a_veh >= 0.0, "sfm.a_veh: must be >= 0");
  require(spec.sfm.b_veh >= 0.0, "sfm.b_veh: must be >= 0");
  require(spec.sfm.v0 >= 0.0, "sfm.v0: must be >= 0");
  require(spec.sfm.force_scale >= 0.0, "sfm.force_scale: must be >= 0");

  require(spec.cap.v_des >= 0.0, "cap.v_des: must be >= 0");
  require(spec.cap.t_safe > 0.0, "cap.t_safe: must be > 0");
  require(spec.cap.d_buf > 0.0, "cap.d_buf: must be > 0");
  require(spec.cap.a_min < 0.0, "cap.a_min: must be < 0");
  require(spec.cap.kp >= 0.0 && spec.cap.ki >= 0.0 && spec.cap.kd >= 0.0,
          "cap.gains: must be >= 0");
  require(spec.cap.corridor_half_width > 0.0, "cap.corridor_half_width: must be > 0");
  require(spec.cap.hysteresis >= 0.0, "cap.hysteresis: must be >= 0");
  require(spec.cap.a_max_cruise > 0.0, "cap.a_max_cruise: must be > 0");

  return issues;
}

void validate_or_throw(const ScenarioSpec& spec) {
  const auto issues = validate(spec);
  if (!issues.empty()) throw ValidationError(issues);
}

}  // namespace veisim
