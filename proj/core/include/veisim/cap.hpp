#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "veisim/geo.hpp"
#include "veisim/vec2.hpp"

namespace veisim {

// Longitudinal collision-avoidance planner: a two-mode FSM that switches
// between PID cruise control and distance-triggered braking.
struct CapConfig {
  double v_des = 5.6;               // m/s, cruise setpoint
  double t_safe = 2.0;              // s, time headway
  double d_buf = 3.0;               // m, standstill buffer
  double a_min = -6.0;              // m/s^2, strongest allowed braking (< 0)
  double kp = 0.05;
  double ki = 0.05;
  double kd = 0.05;
  double corridor_half_width = 2.0; // m, lateral extent of the threat corridor
  double hysteresis = 1.0;          // m, Brake -> Cruise exit margin
  double a_max_cruise = 2.0;        // m/s^2, cruise output cap
  double integral_clamp = 2.0;      // anti-windup bound on the integral term
};

enum class CapMode { None, Cruise, Brake };

const char* cap_mode_name(CapMode mode);

struct CapState {
  CapMode mode = CapMode::Cruise;
  double pid_integral = 0.0;
  double prev_error = 0.0;
  // Braking command committed on Cruise -> Brake entry. While braking it may
  // only strengthen (toward a_min), never relax; replanning from the shrinking
  // gap alone would weaken the command every step and the ego would creep past
  // the buffer into the threat.
  double brake_cmd = 0.0;
};

struct ControlCommand {
  double accel = 0.0;
  CapMode mode = CapMode::Cruise;
};

struct ThreatCandidate {
  std::string id;
  Vec2 position;  // local plane
};

struct Threat {
  std::string id;
  double gap = 0.0;  // m, Euclidean from the reference point
};

// d_safe(v) = max(v^2 / (2|a_min|), t_safe * v) + d_buf
double safe_distance(const CapConfig& cfg, double v);

// Picks the nearest scooter inside the forward corridor. `ego` is the pose of
// the gap reference point (front bumper midpoint), heading along the path;
// candidates with longitudinal component > 0 and |lateral| <= the corridor
// half-width qualify, and the minimum-gap one wins. Ties keep list order.
std::optional<Threat> select_threat(const Pose2D& ego, std::span<const ThreatCandidate> scooters,
                                    const CapConfig& cfg);

// One controller step. Brake entry commits
//   brake_cmd = max(a_min, -v^2 / (2 * (d_safe(v) - d_buf)))
// and later Brake frames may only strengthen it from the remaining distance,
// required = -v^2 / (2 * (gap - d_buf)). Exit to Cruise when the threat is
// gone or gap >= d_safe + hysteresis. Cruise runs a positional PID on
// v_des - v with integral anti-windup, output in [a_min, a_max_cruise].
// The integral is frozen while braking; prev_error is updated every call so
// the derivative term sees no jump on mode changes. At v <= 0 in Brake the
// command is 0 (hold at rest, no reversing).
std::pair<ControlCommand, CapState> compute_command(const CapState& state, double v_veh,
                                                    std::optional<double> threat_gap,
                                                    const CapConfig& cfg, double dt);

}  // namespace veisim
