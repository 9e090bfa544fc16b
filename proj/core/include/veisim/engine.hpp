#pragma once

#include <string>
#include <vector>

#include "veisim/cap.hpp"
#include "veisim/metrics.hpp"
#include "veisim/scenario.hpp"
#include "veisim/track.hpp"
#include "veisim/vec2.hpp"

namespace veisim {

struct Event {
  enum class Kind { CollisionStart, BrakeEnter, BrakeExit };
  double t = 0.0;
  Kind kind = Kind::CollisionStart;
};

const char* event_kind_name(Event::Kind kind);

struct ScooterFrame {
  std::string id;
  Vec2 position;
  Vec2 velocity;
  Vec2 f_des;  // zero for kinematic replay
  Vec2 f_veh;  // zero for replay and Aggressive riders
  double gap = 0.0;  // m, from the ego front bumper midpoint
  double ttc = 0.0;  // s, may be +infinity
  TtcZone zone = TtcZone::Safe;
};

struct Frame {
  double t = 0.0;
  Pose2D ego_pose;
  double ego_speed = 0.0;
  double ego_accel = 0.0;
  CapMode cap_mode = CapMode::None;
  bool collided = false;  // latched flag as of this frame
  std::vector<ScooterFrame> scooters;
};

struct SimTrace {
  std::string scenario;
  std::string variant;  // stamped by the caller that picked the variant
  double dt = 0.0;
  std::vector<Frame> frames;
  std::vector<Event> events;
};

// Translates every keyframe time by delta; positions untouched.
AgentTrack shift_timing(const AgentTrack& track, double delta);

// Signed clearance between the scooter disc and the ego's oriented rectangle:
// positive outside (surface distance), zero at contact, negative inside
// (penetration depth plus radius, so deeper overlap is more negative).
double rect_disc_clearance(const Pose2D& ego, const CollisionGeometry& geom, Vec2 scooter_pos);

// True iff the disc touches or overlaps the rectangle (clearance <= 0).
bool detect_collision(const Pose2D& ego, const CollisionGeometry& geom, Vec2 scooter_pos);

// Fixed-step closed-loop simulation. Per frame: snapshot, ego control
// (constant speed or CAP), scooter forces/updates from the snapshot,
// collision latch (ego speed forced to 0 from the first colliding frame on),
// record, integrate. Frame times are t0 + k*dt computed from integer k,
// where t0 is the ego track's first keyframe time; frame count is
// floor(duration/dt) + 1. Throws ValidationError on an invalid spec.
SimTrace run_scenario(const ScenarioSpec& spec);

// Searches timing shifts on a grid (multiples of grid_step covering every
// offset with temporal overlap) for the delta minimizing the worst-case
// signed clearance between the kinematically replayed agents, evaluated at
// eval_dt over the overlapping time window. Ties prefer smaller |delta|,
// then the smaller delta. Offsets with no temporal overlap cannot collide
// and are skipped; if no offset overlaps at all, returns 0.
double induce_overlap(const AgentTrack& ego_track, const AgentTrack& scooter_track,
                      const CollisionGeometry& geom, double grid_step = 0.1,
                      double eval_dt = 0.05);

}  // namespace veisim
