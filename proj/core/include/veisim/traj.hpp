#pragma once

#include <string>
#include <vector>

#include "veisim/track.hpp"

namespace veisim {

// Fixed-rate resampling of an AgentTrack. Sample k is at time t0 + k*dt.
struct SampledTrajectory {
  std::string agent_id;
  double t0 = 0.0;
  double dt = 0.05;
  std::vector<Pose2D> poses;
  std::vector<double> speeds;  // forward-difference magnitude, m/s

  std::size_t size() const { return poses.size(); }
  double time_at(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
  double t_end() const { return time_at(poses.empty() ? 0 : poses.size() - 1); }

  // Pose at time t with endpoint clamping (agents hold their boundary pose
  // outside the sampled span). Linear in position, shortest-arc in heading.
  Pose2D sample(double t) const;
};

// Cumulative chord lengths along a sampled trajectory's position polyline.
struct PathArcLength {
  std::vector<double> cumulative;  // cumulative[0] = 0
  double total = 0.0;
};

// Natural cubic spline through the keyframes of `track`, sampled every dt
// seconds from the first keyframe time up to the last. Two keyframes
// degenerate to linear interpolation (the natural spline of two knots).
// Headings interpolate segment-wise via shortest arc. Throws DomainError
// when the track is not simulable or dt <= 0.
SampledTrajectory cubic_spline_resample(const AgentTrack& track, double dt);

// Shortest-arc heading interpolation: walks from h0 toward h1 along the
// smaller arc; u in [0, 1]. An exact pi separation takes the CCW direction.
double interp_heading(double h0, double h1, double u);

PathArcLength arc_length(const SampledTrajectory& traj);

// Pose on the position polyline at arc length s (clamped to [0, total]).
// Heading is the local chord tangent; degenerate (zero-length) paths fall
// back to the stored sample headings.
Pose2D pose_at_arclength(const SampledTrajectory& traj, const PathArcLength& arcs, double s);

}  // namespace veisim
