#pragma once

#include "veisim/vec2.hpp"

namespace veisim {

// Social-force rider model. Forces are in newtons, positions in metres,
// velocities in m/s; the integrator is semi-implicit Euler.
struct SfmParams {
  double mass = 100.0;         // kg, rider + scooter
  double v_max = 7.0;          // m/s, hard speed clamp
  double v0 = 5.0;             // m/s, preferred cruising speed
  double sigma_des = 1.0;      // m, softening length for the goal attractor
  double epsilon = 0.1;        // m, lower bound on the repulsion distance
  double k_des = 100.0;        // N/(m/s), relaxation gain toward desired velocity
  double a_veh = 100.0;        // N, vehicle repulsion amplitude
  double b_veh = 3.5;          // 1/m, vehicle repulsion decay rate
  double force_scale = 1.0;    // dimensionless multiplier on the total force
};

enum class RiderProfile { Normal, Aggressive };

struct SfmState {
  Vec2 position;
  Vec2 velocity;
};

struct SfmForces {
  Vec2 f_des;
  Vec2 f_veh;
  Vec2 f_total;
};

// Goal attractor: relaxation toward v_des = v0 * (dest - pos) / (|d|^2 + sigma^2).
Vec2 desired_force(const SfmParams& params, Vec2 esc_pos, Vec2 esc_vel, Vec2 dest);

// Exponential repulsion from the vehicle influence point toward the scooter.
// fallback_dir is used as the push direction when the two points coincide;
// a zero-magnitude force is returned as exactly (0, 0).
Vec2 vehicle_repulsion(const SfmParams& params, Vec2 esc_pos, Vec2 veh_pos, Vec2 fallback_dir);

// Aggressive riders ignore the vehicle entirely: f_veh is exactly (0, 0) and
// f_total aliases f_des, so Aggressive traces are bitwise reproducible from
// the desired force alone.
SfmForces total_force(const SfmParams& params, RiderProfile profile, Vec2 esc_pos, Vec2 esc_vel,
                      Vec2 dest, Vec2 veh_pos, Vec2 fallback_dir);

// One semi-implicit Euler step: v += (force_scale * f / m) dt, clamp |v| to
// v_max by rescaling, then x += v dt.
SfmState sfm_step(const SfmParams& params, const SfmState& state, Vec2 f_total, double dt);

}  // namespace veisim
