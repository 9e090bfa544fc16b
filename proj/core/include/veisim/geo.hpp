#pragma once

#include "veisim/vec2.hpp"

namespace veisim {

// WGS84-style geographic coordinate, degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  constexpr bool operator==(const GeoPoint&) const = default;
};

// Position plus heading in the local tangent plane.
// Heading is radians, counterclockwise from +x (east), normalized to (-pi, pi].
struct Pose2D {
  Vec2 position;
  double heading = 0.0;
};

// Geographic axis-aligned box, used to describe the map extent of a scenario.
struct BoundingBox {
  GeoPoint min;
  GeoPoint max;
  double margin_m = 0.0;
};

inline constexpr double kEarthRadius = 6'371'000.0;  // metres, spherical model

constexpr double deg2rad(double d) { return d * 3.141592653589793238462643383279502884 / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / 3.141592653589793238462643383279502884; }

// Wraps an angle to (-pi, pi]. An input of exactly pi (mod 2pi) maps to +pi.
double normalize_angle(double a);

// Compass heading (degrees, clockwise from north) to math heading
// (radians, counterclockwise from east), normalized.
double heading_from_compass_deg(double compass_deg);

// Equirectangular projection around `origin`:
//   x = R * dlon * cos(origin.lat),  y = R * dlat   (angles in radians)
// Throws DomainError when |lat| > 90 or |lon| > 180 on either argument.
Vec2 project_to_local(const GeoPoint& p, const GeoPoint& origin);

// Exact inverse of project_to_local for the same origin.
GeoPoint inverse_project(const Vec2& local, const GeoPoint& origin);

// Camera-frame annotation (rel_x forward, rel_y left in image convention, metres)
// to world position. rel_y is negated before rotating into the world frame:
//   world = ego.position + Rot(ego.heading) * (rel_x, -rel_y)
Vec2 ego_relative_to_world(double rel_x, double rel_y, const Pose2D& ego);

}  // namespace veisim
