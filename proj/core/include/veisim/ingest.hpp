#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "veisim/track.hpp"

namespace veisim {

// One GPS fix. heading (compass degrees) and speed (m/s) may be absent.
struct GpsRecord {
  double t = 0.0;
  GeoPoint pos;
  std::optional<double> heading_deg;
  std::optional<double> speed;
};

// One camera annotation: scooter position relative to the ego at time t.
// rel_x forward, rel_y left, metres (image convention; see ego_relative_to_world).
struct AnnotationRecord {
  double t = 0.0;
  std::string scooter_id;
  double rel_x = 0.0;
  double rel_y = 0.0;
};

// The raw input bundle for one recorded interaction.
struct InteractionLog {
  std::vector<GpsRecord> gps;
  std::vector<AnnotationRecord> annotations;

  // Union time span of both streams, seconds.
  double duration() const;
};

// One annotation paired with the ego pose interpolated to its timestamp.
struct SyncedFrame {
  double t = 0.0;
  Pose2D ego_pose;  // local frame, origin = first GPS fix
  std::string scooter_id;
  double rel_x = 0.0;
  double rel_y = 0.0;
  double gps_dt = 0.0;  // |t - nearest GPS timestamp|
};

struct SyncResult {
  std::vector<SyncedFrame> frames;
  int dropped = 0;  // annotations beyond tolerance of any GPS fix
};

struct TrackBuildResult {
  std::vector<AgentTrack> tracks;  // ego first, then scooters by first appearance
  GeoPoint origin;                 // projection origin (first GPS fix)
  std::vector<std::string> warnings;
};

inline constexpr double kDefaultSyncTolerance = 0.5;  // seconds

// CSV parsers. Header must be exactly "t,lat,lon,heading,speed" /
// "t,scooter_id,rel_x,rel_y". Malformed rows, non-numeric fields and
// non-monotonic timestamps raise ParseError naming `source` and the
// 1-based physical line. Lat/lon outside the valid range raise too.
std::vector<GpsRecord> parse_gps(std::istream& in, const std::string& source);
std::vector<AnnotationRecord> parse_annotations(std::istream& in, const std::string& source);
std::vector<GpsRecord> parse_gps_file(const std::string& path);
std::vector<AnnotationRecord> parse_annotations_file(const std::string& path);

// Deterministic serializers; parse(serialize(x)) == x (round-trip property).
void write_gps_csv(const std::vector<GpsRecord>& records, std::ostream& out);
void write_annotations_csv(const std::vector<AnnotationRecord>& records, std::ostream& out);

// Pairs each annotation with the nearest-in-time GPS fix. Pairs with
// |dt| > tolerance are dropped and counted. Ego pose is interpolated
// linearly (position) / shortest-arc (heading) to the annotation time.
// Throws SyncError when the two streams' time ranges do not overlap.
SyncResult synchronize(const std::vector<GpsRecord>& gps,
                       const std::vector<AnnotationRecord>& annotations,
                       double tolerance = kDefaultSyncTolerance);

// For each distinct frame timestamp, the scooter ids active at it. A scooter
// is active between its first and last surviving annotation, inclusive.
std::map<double, std::set<std::string>> active_agents(const std::vector<SyncedFrame>& frames);

// One ego track from the full GPS stream (projected; headings from the GPS
// field when present, else from consecutive displacements) plus one world
// frame track per scooter. Scooters with fewer than 2 keyframes are emitted
// anyway and reported in `warnings`.
TrackBuildResult build_tracks(const std::vector<GpsRecord>& gps,
                              const std::vector<SyncedFrame>& frames);

}  // namespace veisim
