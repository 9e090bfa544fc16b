#include "veisim/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "veisim/errors.hpp"
#include "veisim/numfmt.hpp"
#include "veisim/traj.hpp"

namespace veisim {

namespace {

constexpr const char* kGpsHeader = "t,lat,lon,heading,speed";
constexpr const char* kAnnHeader = "t,scooter_id,rel_x,rel_y";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& field, const std::string& source, int line,
                    const char* name) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError(source, line, std::string("field '") + name + "' is not a finite number: '" +
                                       field + "'");
  }
  return value;
}

std::string trim_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

void expect_header(std::istream& in, const std::string& source, const char* expected) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "empty file, expected header");
  line = trim_cr(line);
  if (line != expected) {
    throw ParseError(source, 1,
                     "bad header: '" + line + "' (expected '" + expected + "')");
  }
}

std::string fmt(double v) { return format_double(v); }

// Resolved ego poses in the local plane, one per GPS record.
struct EgoPath {
  std::vector<double> t;
  std::vector<Pose2D> poses;
};

EgoPath resolve_ego_path(const std::vector<GpsRecord>& gps) {
  EgoPath path;
  path.t.reserve(gps.size());
  path.poses.reserve(gps.size());
  const GeoPoint origin = gps.front().pos;
  for (const auto& rec : gps) {
    path.t.push_back(rec.t);
    path.poses.push_back({project_to_local(rec.pos, origin), 0.0});
  }
  double prev_heading = 0.0;
  for (std::size_t i = 0; i < gps.size(); ++i) {
    double h = prev_heading;
    if (gps[i].heading_deg) {
      h = heading_from_compass_deg(*gps[i].heading_deg);
    } else {
      // displacement heading: forward difference, last record reuses previous
      const std::size_t a = (i + 1 < gps.size()) ? i : (i > 0 ? i - 1 : i);
      const std::size_t b = (i + 1 < gps.size()) ? i + 1 : i;
      if (b > a) {
        const Vec2 d = path.poses[b].position - path.poses[a].position;
        if (d.norm() > 1e-12) h = std::atan2(d.y, d.x);
      }
    }
    path.poses[i].heading = h;
    prev_heading = h;
  }
  return path;
}

Pose2D ego_pose_at(const EgoPath& path, double t) {
  if (t <= path.t.front()) return path.poses.front();
  if (t >= path.t.back()) return path.poses.back();
  const auto it = std::upper_bound(path.t.begin(), path.t.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - path.t.begin()) - 1;
  const double u = (t - path.t[i]) / (path.t[i + 1] - path.t[i]);
  Pose2D out;
  out.position =
      path.poses[i].position + (path.poses[i + 1].position - path.poses[i].position) * u;
  out.heading = interp_heading(path.poses[i].heading, path.poses[i + 1].heading, u);
  return out;
}

void derive_headings_from_displacement(AgentTrack& track) {
  double prev = 0.0;
  for (std::size_t i = 0; i < track.keyframes.size(); ++i) {
    double h = prev;
    const std::size_t a = (i + 1 < track.keyframes.size()) ? i : (i > 0 ? i - 1 : i);
    const std::size_t b = (i + 1 < track.keyframes.size()) ? i + 1 : i;
    if (b > a) {
      const Vec2 d = track.keyframes[b].pose.position - track.keyframes[a].pose.position;
      if (d.norm() > 1e-12) h = std::atan2(d.y, d.x);
    }
    track.keyframes[i].pose.heading = h;
    prev = h;
  }
}

}  // namespace

double InteractionLog::duration() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  if (!gps.empty()) {
    lo = std::min(lo, gps.front().t);
    hi = std::max(hi, gps.back().t);
  }
  if (!annotations.empty()) {
    lo = std::min(lo, annotations.front().t);
    hi = std::max(hi, annotations.back().t);
  }
  return (hi > lo) ? hi - lo : 0.0;
}

std::vector<GpsRecord> parse_gps(std::istream& in, const std::string& source) {
  expect_header(in, source, kGpsHeader);
  std::vector<GpsRecord> out;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_cr(line);
    const auto fields = split_csv(line);
    if (fields.size() != 5) {
      throw ParseError(source, lineno,
                       "expected 5 fields, got " + std::to_string(fields.size()));
    }
    GpsRecord rec;
    rec.t = parse_double(fields[0], source, lineno, "t");
    rec.pos.lat = parse_double(fields[1], source, lineno, "lat");
    rec.pos.lon = parse_double(fields[2], source, lineno, "lon");
    if (std::abs(rec.pos.lat) > 90.0 || std::abs(rec.pos.lon) > 180.0) {
      throw ParseError(source, lineno, "lat/lon out of range");
    }
    if (!fields[3].empty()) rec.heading_deg = parse_double(fields[3], source, lineno, "heading");
    if (!fields[4].empty()) {
      rec.speed = parse_double(fields[4], source, lineno, "speed");
      if (*rec.speed < 0.0) throw ParseError(source, lineno, "speed must be >= 0");
    }
    if (!out.empty() && !(rec.t > out.back().t)) {
      throw ParseError(source, lineno, "timestamps must be strictly increasing");
    }
    out.push_back(rec);
  }
  return out;
}

std::vector<AnnotationRecord> parse_annotations(std::istream& in, const std::string& source) {
  expect_header(in, source, kAnnHeader);
  std::vector<AnnotationRecord> out;
  std::map<std::string, double> last_t_by_id;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_cr(line);
    const auto fields = split_csv(line);
    if (fields.size() != 4) {
      throw ParseError(source, lineno,
                       "expected 4 fields, got " + std::to_string(fields.size()));
    }
    AnnotationRecord rec;
    rec.t = parse_double(fields[0], source, lineno, "t");
    rec.scooter_id = fields[1];
    if (rec.scooter_id.empty()) throw ParseError(source, lineno, "scooter_id is empty");
    rec.rel_x = parse_double(fields[2], source, lineno, "rel_x");
    rec.rel_y = parse_double(fields[3], source, lineno, "rel_y");
    if (!out.empty() && rec.t < out.back().t) {
      throw ParseError(source, lineno, "timestamps must be non-decreasing");
    }
    auto [it, inserted] = last_t_by_id.try_emplace(rec.scooter_id, rec.t);
    if (!inserted) {
      if (rec.t == it->second) {
        throw ParseError(source, lineno, "duplicate (t, scooter_id) pair");
      }
      it->second = rec.t;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<GpsRecord> parse_gps_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_gps(in, path);
}

std::vector<AnnotationRecord> parse_annotations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_annotations(in, path);
}

void write_gps_csv(const std::vector<GpsRecord>& records, std::ostream& out) {
  out << kGpsHeader << "\n";
  for (const auto& r : records) {
    out << fmt(r.t) << ',' << fmt(r.pos.lat) << ',' << fmt(r.pos.lon) << ','
        << (r.heading_deg ? fmt(*r.heading_deg) : "") << ','
        << (r.speed ? fmt(*r.speed) : "") << "\n";
  }
}

void write_annotations_csv(const std::vector<AnnotationRecord>& records, std::ostream& out) {
  out << kAnnHeader << "\n";
  for (const auto& r : records) {
    out << fmt(r.t) << ',' << r.scooter_id << ',' << fmt(r.rel_x) << ',' << fmt(r.rel_y)
        << "\n";
  }
}

SyncResult synchronize(const std::vector<GpsRecord>& gps,
                       const std::vector<AnnotationRecord>& annotations, double tolerance) {
  if (gps.empty()) throw SyncError("synchronize: GPS stream is empty");
  SyncResult result;
  if (annotations.empty()) return result;

  if (annotations.back().t < gps.front().t || annotations.front().t > gps.back().t) {
    throw SyncError("synchronize: annotation time range [" +
                    std::to_string(annotations.front().t) + ", " +
                    std::to_string(annotations.back().t) +
                    "] does not overlap GPS range [" + std::to_string(gps.front().t) + ", " +
                    std::to_string(gps.back().t) + "]");
  }

  const EgoPath path = resolve_ego_path(gps);
  for (const auto& ann : annotations) {
    // nearest GPS fix by |dt|
    const auto it = std::lower_bound(path.t.begin(), path.t.end(), ann.t);
    double best = std::numeric_limits<double>::infinity();
    if (it != path.t.end()) best = std::min(best, std::abs(*it - ann.t));
    if (it != path.t.begin()) best = std::min(best, std::abs(*(it - 1) - ann.t));
    if (best > tolerance) {
      ++result.dropped;
      continue;
    }
    SyncedFrame frame;
    frame.t = ann.t;
    frame.ego_pose = ego_pose_at(path, ann.t);
    frame.scooter_id = ann.scooter_id;
    frame.rel_x = ann.rel_x;
    frame.rel_y = ann.rel_y;
    frame.gps_dt = best;
    result.frames.push_back(std::move(frame));
  }
  return result;
}

std::map<double, std::set<std::string>> active_agents(const std::vector<SyncedFrame>& frames) {
  std::map<std::string, std::pair<double, double>> span;
  for (const auto& f : frames) {
    auto [it, inserted] = span.try_emplace(f.scooter_id, std::make_pair(f.t, f.t));
    if (!inserted) {
      it->second.first = std::min(it->second.first, f.t);
      it->second.second = std::max(it->second.second, f.t);
    }
  }
  std::map<double, std::set<std::string>> out;
  for (const auto& f : frames) out.try_emplace(f.t);
  for (auto& [t, ids] : out) {
    for (const auto& [id, range] : span) {
      if (t >= range.first && t <= range.second) ids.insert(id);
    }
  }
  return out;
}

TrackBuildResult build_tracks(const std::vector<GpsRecord>& gps,
                              const std::vector<SyncedFrame>& frames) {
  if (gps.empty()) throw SyncError("build_tracks: GPS stream is empty");
  TrackBuildResult result;
  result.origin = gps.front().pos;

  const EgoPath path = resolve_ego_path(gps);
  AgentTrack ego;
  ego.agent_id = "ego";
  ego.kind = AgentKind::Ego;
  ego.keyframes.reserve(gps.size());
  for (std::size_t i = 0; i < gps.size(); ++i) {
    ego.keyframes.push_back({gps[i].t, path.poses[i]});
  }
  result.tracks.push_back(std::move(ego));

  std::vector<std::string> order;  // scooters by first appearance
  std::map<std::string, AgentTrack> scooters;
  for (const auto& f : frames) {
    auto [it, inserted] = scooters.try_emplace(f.scooter_id);
    if (inserted) {
      it->second.agent_id = f.scooter_id;
      it->second.kind = AgentKind::Escooter;
      order.push_back(f.scooter_id);
    }
    const Vec2 world = ego_relative_to_world(f.rel_x, f.rel_y, f.ego_pose);
    it->second.keyframes.push_back({f.t, {world, 0.0}});
  }
  for (const auto& id : order) {
    AgentTrack& track = scooters[id];
    derive_headings_from_displacement(track);
    if (!track.simulable()) {
      result.warnings.push_back("scooter '" + id + "' has " +
                                std::to_string(track.keyframes.size()) +
                                " keyframe(s); not simulable");
    }
    result.tracks.push_back(std::move(track));
  }
  return result;
}

}  // namespace veisim
