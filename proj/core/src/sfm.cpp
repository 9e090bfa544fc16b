#include "veisim/sfm.hpp"

#include <cmath>

namespace veisim {

Vec2 desired_force(const SfmParams& params, Vec2 esc_pos, Vec2 esc_vel, Vec2 dest) {
  const Vec2 delta = dest - esc_pos;
  const double denom = delta.norm_sq() + params.sigma_des * params.sigma_des;
  const Vec2 v_des = (params.v0 / denom) * delta;
  return params.k_des * (v_des - esc_vel);
}

Vec2 vehicle_repulsion(const SfmParams& params, Vec2 esc_pos, Vec2 veh_pos, Vec2 fallback_dir) {
  const Vec2 delta = esc_pos - veh_pos;
  const double d = delta.norm();
  const double mag = params.a_veh * std::exp(-params.b_veh * std::max(d, params.epsilon));
  if (mag == 0.0) return {0.0, 0.0};
  const Vec2 n = (d > 0.0) ? (1.0 / d) * delta : fallback_dir;
  return mag * n;
}

SfmForces total_force(const SfmParams& params, RiderProfile profile, Vec2 esc_pos, Vec2 esc_vel,
                      Vec2 dest, Vec2 veh_pos, Vec2 fallback_dir) {
  SfmForces out;
  out.f_des = desired_force(params, esc_pos, esc_vel, dest);
  if (profile == RiderProfile::Aggressive) {
    out.f_veh = {0.0, 0.0};
    out.f_total = out.f_des;
  } else {
    out.f_veh = vehicle_repulsion(params, esc_pos, veh_pos, fallback_dir);
    out.f_total = out.f_des + out.f_veh;
  }
  return out;
}

SfmState sfm_step(const SfmParams& params, const SfmState& state, Vec2 f_total, double dt) {
  SfmState next = state;
  next.velocity += (params.force_scale * dt / params.mass) * f_total;
  const double speed = next.velocity.norm();
  if (speed > params.v_max) next.velocity = (params.v_max / speed) * next.velocity;
  next.position += next.velocity * dt;
  return next;
}

}  // namespace veisim
