#pragma once

#include <cstdint>
#include <limits>

namespace veisim {

struct SimTrace;

// TTC zones in increasing risk order; the numeric order is what makes the
// per-frame worst-of-scooters reduction a plain max.
enum class TtcZone { Safe = 0, Attention = 1, Alert = 2, Collision = 3 };

const char* zone_name(TtcZone zone);

// Ego speeds at or below this are treated as "not closing": TTC is infinite.
inline constexpr double kTtcStopThreshold = 0.01;  // m/s

// TTC approximated as gap / ego speed (relative velocity deliberately
// neglected). v_veh <= threshold yields +infinity.
double ttc(double gap, double v_veh, double v_stop_threshold = kTtcStopThreshold);

// Relative-velocity TTC, kept for sensitivity studies; not used by reports.
// closing_speed <= threshold yields +infinity.
double ttc_relative(double gap, double closing_speed,
                    double v_stop_threshold = kTtcStopThreshold);

// collided dominates; else TTC > 2 Safe, 1 < TTC <= 2 Attention, TTC <= 1
// Alert (boundary values resolve downward: 2.0 -> Attention, 1.0 -> Alert).
TtcZone classify_zone(double ttc_value, bool collided_now);

// Zone time accounting. Frame counts are the source of truth so that the
// partition property (buckets sum to frame_count * dt) holds exactly; the
// seconds views derive from them.
struct ZoneDurations {
  std::int64_t safe_frames = 0;
  std::int64_t attention_frames = 0;
  std::int64_t alert_frames = 0;
  std::int64_t collision_frames = 0;
  double dt = 0.0;

  std::int64_t total_frames() const {
    return safe_frames + attention_frames + alert_frames + collision_frames;
  }
  double safe() const { return static_cast<double>(safe_frames) * dt; }
  double attention() const { return static_cast<double>(attention_frames) * dt; }
  double alert() const { return static_cast<double>(alert_frames) * dt; }
  double collision() const { return static_cast<double>(collision_frames) * dt; }
  double total() const { return static_cast<double>(total_frames()) * dt; }
};

struct SafetyReport {
  double index = 0.0;  // in [0, 1]; 0 exactly when collided
  ZoneDurations zones;
  bool collided = false;
  double speed_mean = 0.0;  // m/s, population mean of ego speed
  double speed_std = 0.0;   // m/s, population standard deviation
  double min_gap = std::numeric_limits<double>::infinity();
  double min_ttc = std::numeric_limits<double>::infinity();
};

// A frame's zone: Collision when the collided flag is set, else the worst
// zone over its scooters (Safe when there are none).
TtcZone frame_zone(const SimTrace& trace, std::size_t frame_index);

ZoneDurations zone_durations(const SimTrace& trace);

// (safe + attention frames) / total frames; 0.0 exactly when any frame
// collided. Integer frame counts make the all-safe case exactly 1.0.
double safety_index(const SimTrace& trace);

double speed_mean(const SimTrace& trace);
double speed_std(const SimTrace& trace);

SafetyReport build_report(const SimTrace& trace);

}  // namespace veisim
