#pragma once

#include <span>
#include <string>
#include <vector>

#include "veisim/geo.hpp"

namespace veisim {

enum class AgentKind { Ego, Escooter };

struct Keyframe {
  double t = 0.0;  // seconds, relative to interaction start
  Pose2D pose;
};

// World-frame keyframe sequence for one agent; the unit of reconstruction.
struct AgentTrack {
  std::string agent_id;
  AgentKind kind = AgentKind::Escooter;
  std::vector<Keyframe> keyframes;  // strictly increasing t

  // A track needs at least two keyframes to define motion.
  bool simulable() const { return keyframes.size() >= 2; }
  double t_begin() const { return keyframes.front().t; }
  double t_end() const { return keyframes.back().t; }
};

// Geographic hull of every keyframe of every track, expanded by `margin_m`
// metres on each side (converted to degrees at the box centre latitude).
// `origin` is the projection origin the keyframes were built with.
BoundingBox compute_scenario_bounds(std::span<const AgentTrack> tracks,
                                    const GeoPoint& origin, double margin_m);

}  // namespace veisim
