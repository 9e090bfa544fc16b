#include "veisim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "veisim/engine.hpp"
#include "veisim/errors.hpp"

namespace veisim {

const char* zone_name(TtcZone zone) {
  switch (zone) {
    case TtcZone::Safe: return "safe";
    case TtcZone::Attention: return "attention";
    case TtcZone::Alert: return "alert";
    case TtcZone::Collision: return "collision";
  }
  return "safe";
}

double ttc(double gap, double v_veh, double v_stop_threshold) {
  if (v_veh <= v_stop_threshold) return std::numeric_limits<double>::infinity();
  return gap / v_veh;
}

double ttc_relative(double gap, double closing_speed, double v_stop_threshold) {
  if (closing_speed <= v_stop_threshold) return std::numeric_limits<double>::infinity();
  return gap / closing_speed;
}

TtcZone classify_zone(double ttc_value, bool collided_now) {
  if (collided_now) return TtcZone::Collision;
  if (ttc_value > 2.0) return TtcZone::Safe;
  if (ttc_value > 1.0) return TtcZone::Attention;
  return TtcZone::Alert;
}

TtcZone frame_zone(const SimTrace& trace, std::size_t frame_index) {
  const Frame& frame = trace.frames.at(frame_index);
  if (frame.collided) return TtcZone::Collision;
  TtcZone worst = TtcZone::Safe;
  for (const auto& s : frame.scooters) worst = std::max(worst, s.zone);
  return worst;
}

ZoneDurations zone_durations(const SimTrace& trace) {
  ZoneDurations out;
  out.dt = trace.dt;
  for (std::size_t i = 0; i < trace.frames.size(); ++i) {
    switch (frame_zone(trace, i)) {
      case TtcZone::Safe: ++out.safe_frames; break;
      case TtcZone::Attention: ++out.attention_frames; break;
      case TtcZone::Alert: ++out.alert_frames; break;
      case TtcZone::Collision: ++out.collision_frames; break;
    }
  }
  return out;
}

double safety_index(const SimTrace& trace) {
  if (trace.frames.empty()) throw DomainError("safety_index: empty trace");
  const ZoneDurations zones = zone_durations(trace);
  if (zones.collision_frames > 0) return 0.0;
  for (const auto& frame : trace.frames) {
    if (frame.collided) return 0.0;
  }
  return static_cast<double>(zones.safe_frames + zones.attention_frames) /
         static_cast<double>(zones.total_frames());
}

double speed_mean(const SimTrace& trace) {
  if (trace.frames.empty()) throw DomainError("speed_mean: empty trace");
  double sum = 0.0;
  for (const auto& f : trace.frames) sum += f.ego_speed;
  return sum / static_cast<double>(trace.frames.size());
}

double speed_std(const SimTrace& trace) {
  const double mean = speed_mean(trace);
  double sq = 0.0;
  for (const auto& f : trace.frames) {
    const double d = f.ego_speed - mean;
    sq += d * d;
  }
  return std::sqrt(sq / static_cast<double>(trace.frames.size()));
}

SafetyReport build_report(const SimTrace& trace) {
  SafetyReport report;
  report.zones = zone_durations(trace);
  report.index = safety_index(trace);
  report.collided = !trace.frames.empty() && trace.frames.back().collided;
  report.speed_mean = speed_mean(trace);
  report.speed_std = speed_std(trace);
  for (const auto& frame : trace.frames) {
    for (const auto& s : frame.scooters) {
      report.min_gap = std::min(report.min_gap, s.gap);
      report.min_ttc = std::min(report.min_ttc, s.ttc);
    }
  }
  return report;
}

}  // namespace veisim
