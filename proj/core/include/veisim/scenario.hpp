#pragma once

#include <string>
#include <vector>

#include "veisim/cap.hpp"
#include "veisim/geo.hpp"
#include "veisim/sfm.hpp"
#include "veisim/track.hpp"

namespace veisim {

enum class EgoMode { ConstantSpeedReplay, CapControlled };
enum class ScooterMode { KinematicReplay, Sfm };

struct CollisionGeometry {
  double ego_length = 4.5;     // m
  double ego_width = 1.8;      // m
  double scooter_radius = 0.4; // m
};

// Complete description of one simulation run: reconstructed tracks plus the
// mode/parameter choices that distinguish the experiment variants.
struct ScenarioSpec {
  std::string name;
  std::vector<AgentTrack> tracks;  // ego first by convention
  double dt = 0.05;                // s
  double duration = 25.0;          // s
  double timing_shift = 0.0;       // s, applied to scooter replay tracks
  double ego_cruise_speed = 5.6;   // m/s, ConstantSpeedReplay speed and CAP v_des
  EgoMode ego_mode = EgoMode::ConstantSpeedReplay;
  ScooterMode scooter_mode = ScooterMode::KinematicReplay;
  RiderProfile rider_profile = RiderProfile::Normal;
  SfmParams sfm;
  CapConfig cap;
  CollisionGeometry geometry;
  GeoPoint origin{};     // projection origin the tracks were built in
  BoundingBox bounds{};  // geographic extent of the interaction, informational

  const AgentTrack* ego_track() const;
  std::vector<const AgentTrack*> scooter_tracks() const;
};

// Collects every violated invariant as "field: problem". Empty means valid.
std::vector<std::string> validate(const ScenarioSpec& spec);

// Throws ValidationError listing all issues at once.
void validate_or_throw(const ScenarioSpec& spec);

}  // namespace veisim
