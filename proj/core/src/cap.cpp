#include "veisim/cap.hpp"

#include <algorithm>
#include <cmath>

namespace veisim {

const char* cap_mode_name(CapMode mode) {
  switch (mode) {
    case CapMode::None: return "none";
    case CapMode::Cruise: return "cruise";
    case CapMode::Brake: return "brake";
  }
  return "none";
}

double safe_distance(const CapConfig& cfg, double v) {
  return std::max(v * v / (2.0 * -cfg.a_min), cfg.t_safe * v) + cfg.d_buf;
}

std::optional<Threat> select_threat(const Pose2D& ego, std::span<const ThreatCandidate> scooters,
                                    const CapConfig& cfg) {
  const Vec2 forward{std::cos(ego.heading), std::sin(ego.heading)};
  const Vec2 left{-forward.y, forward.x};
  std::optional<Threat> best;
  for (const auto& s : scooters) {
    const Vec2 rel = s.position - ego.position;
    const double lon = rel.dot(forward);
    const double lat = rel.dot(left);
    if (lon <= 0.0 || std::abs(lat) > cfg.corridor_half_width) continue;
    const double gap = rel.norm();
    if (!best || gap < best->gap) best = Threat{s.id, gap};
  }
  return best;
}

std::pair<ControlCommand, CapState> compute_command(const CapState& state, double v_veh,
                                                    std::optional<double> threat_gap,
                                                    const CapConfig& cfg, double dt) {
  CapState next = state;
  const double error = cfg.v_des - v_veh;
  const double d_safe = safe_distance(cfg, v_veh);

  ControlCommand cmd;
  if (threat_gap && *threat_gap < d_safe) {
    if (state.mode != CapMode::Brake) {
      // entry: commit from the full braking budget at the current speed
      const double budget = d_safe - cfg.d_buf;
      next.brake_cmd =
          (budget > 0.0) ? std::max(cfg.a_min, -v_veh * v_veh / (2.0 * budget)) : cfg.a_min;
    } else {
      const double remaining = *threat_gap - cfg.d_buf;
      const double required =
          (remaining > 1e-9) ? -v_veh * v_veh / (2.0 * remaining) : cfg.a_min;
      next.brake_cmd = std::max(cfg.a_min, std::min(state.brake_cmd, required));
    }
    next.mode = CapMode::Brake;
    cmd.accel = (v_veh <= 0.0) ? 0.0 : next.brake_cmd;
  } else if (state.mode == CapMode::Brake && threat_gap &&
             *threat_gap < d_safe + cfg.hysteresis) {
    // hysteresis band: hold the committed command, integral stays frozen
    cmd.accel = (v_veh <= 0.0) ? 0.0 : next.brake_cmd;
  } else {
    next.mode = CapMode::Cruise;
    next.brake_cmd = 0.0;
    next.pid_integral = std::clamp(state.pid_integral + error * dt, -cfg.integral_clamp,
                                   cfg.integral_clamp);
    const double derivative = (dt > 0.0) ? (error - state.prev_error) / dt : 0.0;
    cmd.accel = std::clamp(cfg.kp * error + cfg.ki * next.pid_integral + cfg.kd * derivative,
                           cfg.a_min, cfg.a_max_cruise);
  }
  next.prev_error = error;
  cmd.mode = next.mode;
  return {cmd, next};
}

}  // namespace veisim
