#include "veisim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "veisim/errors.hpp"
#include "veisim/traj.hpp"

namespace veisim {

const char* event_kind_name(Event::Kind kind) {
  switch (kind) {
    case Event::Kind::CollisionStart: return "collision_start";
    case Event::Kind::BrakeEnter: return "brake_enter";
    case Event::Kind::BrakeExit: return "brake_exit";
  }
  return "collision_start";
}

AgentTrack shift_timing(const AgentTrack& track, double delta) {
  AgentTrack out = track;
  for (auto& kf : out.keyframes) kf.t += delta;
  return out;
}

double rect_disc_clearance(const Pose2D& ego, const CollisionGeometry& geom, Vec2 scooter_pos) {
  const Vec2 rel = (scooter_pos - ego.position).rotated(-ego.heading);
  const double hx = geom.ego_length / 2.0;
  const double hy = geom.ego_width / 2.0;
  const double dx = std::abs(rel.x) - hx;
  const double dy = std::abs(rel.y) - hy;
  if (dx > 0.0 || dy > 0.0) {
    // outside: surface distance minus radius
    const Vec2 outside{std::max(dx, 0.0), std::max(dy, 0.0)};
    return outside.norm() - geom.scooter_radius;
  }
  // inside: -(penetration depth + radius), deeper is more negative
  return std::max(dx, dy) - geom.scooter_radius;
}

bool detect_collision(const Pose2D& ego, const CollisionGeometry& geom, Vec2 scooter_pos) {
  return rect_disc_clearance(ego, geom, scooter_pos) <= 0.0;
}

namespace {

// Per-scooter runtime: replay trajectory plus, in SFM mode, the dynamic state.
struct ScooterRt {
  std::string id;
  SampledTrajectory replay;
  SfmState state;       // SFM mode only
  Vec2 destination;     // SFM mode only: final keyframe position
};

Vec2 replay_position(const SampledTrajectory& traj, double t) {
  return traj.sample(t).position;
}

Vec2 replay_velocity(const SampledTrajectory& traj, double t, double dt) {
  return (replay_position(traj, t + dt) - replay_position(traj, t)) / dt;
}

}  // namespace

SimTrace run_scenario(const ScenarioSpec& spec) {
  validate_or_throw(spec);

  const AgentTrack* ego_track = spec.ego_track();
  const SampledTrajectory ego_traj = cubic_spline_resample(*ego_track, spec.dt);
  const PathArcLength ego_arcs = arc_length(ego_traj);

  std::vector<ScooterRt> scooters;
  for (const AgentTrack* track : spec.scooter_tracks()) {
    if (!track->simulable()) continue;
    const AgentTrack shifted = shift_timing(*track, spec.timing_shift);
    ScooterRt rt;
    rt.id = shifted.agent_id;
    rt.replay = cubic_spline_resample(shifted, spec.dt);
    rt.state.position = rt.replay.poses.front().position;
    rt.state.velocity = (rt.replay.size() >= 2)
                            ? (rt.replay.poses[1].position - rt.replay.poses[0].position) /
                                  spec.dt
                            : Vec2{0.0, 0.0};
    rt.destination = shifted.keyframes.back().pose.position;
    scooters.push_back(std::move(rt));
  }

  SimTrace trace;
  trace.scenario = spec.name;
  trace.dt = spec.dt;

  const double t0 = ego_traj.t0;
  const std::size_t frame_count =
      static_cast<std::size_t>(spec.duration / spec.dt + 1e-9) + 1;
  trace.frames.reserve(frame_count);

  const bool cap_on = spec.ego_mode == EgoMode::CapControlled;
  double path_s = 0.0;
  double ego_speed = spec.ego_cruise_speed;
  Pose2D ego_pose = pose_at_arclength(ego_traj, ego_arcs, path_s);
  CapState cap_state;
  bool collided = false;

  for (std::size_t k = 0; k < frame_count; ++k) {
    const double t = t0 + static_cast<double>(k) * spec.dt;

    const Vec2 heading_dir{std::cos(ego_pose.heading), std::sin(ego_pose.heading)};
    const Vec2 s_influence =
        ego_pose.position + (spec.geometry.ego_length / 2.0) * heading_dir;

    // scooter snapshot positions for this frame
    std::vector<Vec2> positions(scooters.size());
    for (std::size_t i = 0; i < scooters.size(); ++i) {
      positions[i] = (spec.scooter_mode == ScooterMode::KinematicReplay)
                         ? replay_position(scooters[i].replay, t)
                         : scooters[i].state.position;
    }

    // collision latch before control: the colliding frame already shows v = 0
    if (!collided) {
      for (const Vec2& p : positions) {
        if (detect_collision(ego_pose, spec.geometry, p)) {
          collided = true;
          ego_speed = 0.0;
          trace.events.push_back({t, Event::Kind::CollisionStart});
          break;
        }
      }
    }

    double ego_accel = 0.0;
    CapMode mode = CapMode::None;
    if (cap_on) {
      if (collided) {
        mode = cap_state.mode;  // controller frozen after contact
      } else {
        std::vector<ThreatCandidate> candidates;
        candidates.reserve(scooters.size());
        for (std::size_t i = 0; i < scooters.size(); ++i) {
          candidates.push_back({scooters[i].id, positions[i]});
        }
        const Pose2D bumper{s_influence, ego_pose.heading};
        const auto threat = select_threat(bumper, candidates, spec.cap);
        const CapMode prev_mode = cap_state.mode;
        auto [cmd, next_state] = compute_command(
            cap_state, ego_speed,
            threat ? std::optional<double>(threat->gap) : std::nullopt, spec.cap, spec.dt);
        cap_state = next_state;
        ego_accel = cmd.accel;
        mode = cmd.mode;
        if (prev_mode != CapMode::Brake && mode == CapMode::Brake) {
          trace.events.push_back({t, Event::Kind::BrakeEnter});
        } else if (prev_mode == CapMode::Brake && mode != CapMode::Brake) {
          trace.events.push_back({t, Event::Kind::BrakeExit});
        }
      }
    }

    Frame frame;
    frame.t = t;
    frame.ego_pose = ego_pose;
    frame.ego_speed = ego_speed;
    frame.ego_accel = ego_accel;
    frame.cap_mode = mode;
    frame.collided = collided;
    frame.scooters.reserve(scooters.size());

    const Vec2 fallback_dir = -1.0 * heading_dir;  // push opposing ego travel
    for (std::size_t i = 0; i < scooters.size(); ++i) {
      ScooterRt& rt = scooters[i];
      ScooterFrame sf;
      sf.id = rt.id;
      sf.position = positions[i];
      if (spec.scooter_mode == ScooterMode::KinematicReplay) {
        sf.velocity = replay_velocity(rt.replay, t, spec.dt);
      } else {
        sf.velocity = rt.state.velocity;
        const SfmForces forces =
            total_force(spec.sfm, spec.rider_profile, rt.state.position, rt.state.velocity,
                        rt.destination, s_influence, fallback_dir);
        sf.f_des = forces.f_des;
        sf.f_veh = forces.f_veh;
        rt.state = sfm_step(spec.sfm, rt.state, forces.f_total, spec.dt);
      }
      sf.gap = distance(sf.position, s_influence);
      sf.ttc = ttc(sf.gap, ego_speed);
      sf.zone = classify_zone(sf.ttc, collided);
      frame.scooters.push_back(std::move(sf));
    }
    trace.frames.push_back(std::move(frame));

    // integrate ego to the next frame (semi-implicit in speed)
    if (collided) {
      ego_speed = 0.0;
    } else if (cap_on) {
      ego_speed = std::max(0.0, ego_speed + ego_accel * spec.dt);
    } else {
      ego_speed = spec.ego_cruise_speed;
    }
    path_s = std::min(path_s + ego_speed * spec.dt, ego_arcs.total);
    ego_pose = pose_at_arclength(ego_traj, ego_arcs, path_s);
  }
  return trace;
}

double induce_overlap(const AgentTrack& ego_track, const AgentTrack& scooter_track,
                      const CollisionGeometry& geom, double grid_step, double eval_dt) {
  if (!(grid_step > 0.0) || !(eval_dt > 0.0)) {
    throw DomainError("induce_overlap: grid_step and eval_dt must be > 0");
  }
  const SampledTrajectory ego = cubic_spline_resample(ego_track, eval_dt);
  const SampledTrajectory esc = cubic_spline_resample(scooter_track, eval_dt);

  // deltas with any temporal overlap: esc span shifted by delta meets ego span
  const double lo = ego.t0 - esc.t_end();
  const double hi = ego.t_end() - esc.t0;
  const auto k_min = static_cast<long long>(std::ceil(lo / grid_step - 1e-9));
  const auto k_max = static_cast<long long>(std::floor(hi / grid_step + 1e-9));

  bool found = false;
  double best_obj = 0.0, best_delta = 0.0;
  for (long long k = k_min; k <= k_max; ++k) {
    const double delta = static_cast<double>(k) * grid_step;
    const double t_lo = std::max(ego.t0, esc.t0 + delta);
    const double t_hi = std::min(ego.t_end(), esc.t_end() + delta);
    if (t_lo > t_hi) continue;

    double obj = std::numeric_limits<double>::infinity();
    const auto steps = static_cast<std::size_t>((t_hi - t_lo) / eval_dt + 1e-9);
    for (std::size_t i = 0; i <= steps + 1; ++i) {
      const double t =
          (i <= steps) ? t_lo + static_cast<double>(i) * eval_dt : t_hi;  // cover the end
      const Pose2D ego_pose = ego.sample(t);
      const Vec2 esc_pos = esc.sample(t - delta).position;
      obj = std::min(obj, rect_disc_clearance(ego_pose, geom, esc_pos));
    }

    const bool better =
        !found || obj < best_obj ||
        (obj == best_obj && (std::abs(delta) < std::abs(best_delta) ||
                             (std::abs(delta) == std::abs(best_delta) && delta < best_delta)));
    if (better) {
      found = true;
      best_obj = obj;
      best_delta = delta;
    }
  }
  return found ? best_delta : 0.0;
}

}  // namespace veisim
