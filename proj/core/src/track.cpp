#include "veisim/track.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "veisim/errors.hpp"

namespace veisim {

BoundingBox compute_scenario_bounds(std::span<const AgentTrack> tracks,
                                    const GeoPoint& origin, double margin_m) {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& track : tracks) {
    for (const auto& kf : track.keyframes) {
      min_x = std::min(min_x, kf.pose.position.x);
      min_y = std::min(min_y, kf.pose.position.y);
      max_x = std::max(max_x, kf.pose.position.x);
      max_y = std::max(max_y, kf.pose.position.y);
      any = true;
    }
  }
  if (!any) throw DomainError("compute_scenario_bounds: no keyframes");

  const GeoPoint lo = inverse_project({min_x, min_y}, origin);
  const GeoPoint hi = inverse_project({max_x, max_y}, origin);

  // Metre margin converted to degrees at the box centre latitude.
  const double mid_lat = 0.5 * (lo.lat + hi.lat);
  const double dlat = rad2deg(margin_m / kEarthRadius);
  const double dlon = rad2deg(margin_m / (kEarthRadius * std::cos(deg2rad(mid_lat))));

  BoundingBox box;
  box.min = {lo.lat - dlat, lo.lon - dlon};
  box.max = {hi.lat + dlat, hi.lon + dlon};
  box.margin_m = margin_m;
  return box;
}

}  // namespace veisim
