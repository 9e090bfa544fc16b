#include "veisim/geo.hpp"

#include <cmath>
#include <string>

#include "veisim/errors.hpp"

namespace veisim {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_in_range(const GeoPoint& p, const char* what) {
  if (!(std::abs(p.lat) <= 90.0) || !(std::abs(p.lon) <= 180.0)) {
    throw DomainError(std::string(what) + " out of range: lat=" + std::to_string(p.lat) +
                      " lon=" + std::to_string(p.lon));
  }
}

}  // namespace

double normalize_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  // remainder() can land on -pi exactly; the contract range is (-pi, pi].
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double heading_from_compass_deg(double compass_deg) {
  return normalize_angle(kPi / 2.0 - deg2rad(compass_deg));
}

Vec2 project_to_local(const GeoPoint& p, const GeoPoint& origin) {
  check_in_range(p, "point");
  check_in_range(origin, "origin");
  const double dlat = deg2rad(p.lat - origin.lat);
  const double dlon = deg2rad(p.lon - origin.lon);
  return {kEarthRadius * dlon * std::cos(deg2rad(origin.lat)), kEarthRadius * dlat};
}

GeoPoint inverse_project(const Vec2& local, const GeoPoint& origin) {
  check_in_range(origin, "origin");
  const double lat = origin.lat + rad2deg(local.y / kEarthRadius);
  const double lon =
      origin.lon + rad2deg(local.x / (kEarthRadius * std::cos(deg2rad(origin.lat))));
  return {lat, lon};
}

Vec2 ego_relative_to_world(double rel_x, double rel_y, const Pose2D& ego) {
  return ego.position + Vec2{rel_x, -rel_y}.rotated(ego.heading);
}

}  // namespace veisim
