#include "veisim/traj.hpp"

#include <algorithm>
#include <cmath>

#include "veisim/errors.hpp"

namespace veisim {

namespace {

// Second derivatives of the natural cubic spline through (t[i], y[i]).
// Tridiagonal system solved with the Thomas algorithm; M[0] = M[n-1] = 0.
std::vector<double> natural_spline_m(const std::vector<double>& t,
                                     const std::vector<double>& y) {
  const std::size_t n = t.size();
  std::vector<double> m(n, 0.0);
  if (n < 3) return m;

  const std::size_t k = n - 2;  // interior unknowns
  std::vector<double> diag(k), upper(k), rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double h0 = t[i + 1] - t[i];
    const double h1 = t[i + 2] - t[i + 1];
    diag[i] = (h0 + h1) / 3.0;
    upper[i] = h1 / 6.0;
    rhs[i] = (y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0;
  }
  // forward sweep (lower diagonal equals the previous row's upper)
  for (std::size_t i = 1; i < k; ++i) {
    const double w = upper[i - 1] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m[k] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i >= 1; --i) {
    m[i] = (rhs[i - 1] - upper[i - 1] * m[i + 1]) / diag[i - 1];
  }
  return m;
}

double spline_eval(const std::vector<double>& t, const std::vector<double>& y,
                   const std::vector<double>& m, std::size_t i, double x) {
  const double h = t[i + 1] - t[i];
  const double a = (t[i + 1] - x) / h;
  const double b = (x - t[i]) / h;
  return a * y[i] + b * y[i + 1] +
         ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * (h * h) / 6.0;
}

}  // namespace

double interp_heading(double h0, double h1, double u) {
  const double delta = normalize_angle(h1 - h0);
  return normalize_angle(h0 + u * delta);
}

Pose2D SampledTrajectory::sample(double t) const {
  if (poses.empty()) throw DomainError("sample: empty trajectory");
  if (poses.size() == 1 || t <= t0) return poses.front();
  const double last_t = t_end();
  if (t >= last_t) return poses.back();
  const double f = (t - t0) / dt;
  std::size_t i = static_cast<std::size_t>(f);
  if (i >= poses.size() - 1) i = poses.size() - 2;
  const double u = f - static_cast<double>(i);
  // Snap to the grid sample when t lands on it (modulo rounding), so replay
  // at aligned frame times reproduces the resampled poses bitwise.
  if (u < 1e-9) return poses[i];
  if (u > 1.0 - 1e-9) return poses[i + 1];
  Pose2D out;
  out.position = poses[i].position + (poses[i + 1].position - poses[i].position) * u;
  out.heading = interp_heading(poses[i].heading, poses[i + 1].heading, u);
  return out;
}

SampledTrajectory cubic_spline_resample(const AgentTrack& track, double dt) {
  if (!track.simulable())
    throw DomainError("cubic_spline_resample: track '" + track.agent_id +
                      "' has fewer than 2 keyframes");
  if (!(dt > 0.0)) throw DomainError("cubic_spline_resample: dt must be > 0");

  const std::size_t n = track.keyframes.size();
  std::vector<double> t(n), xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = track.keyframes[i].t;
    xs[i] = track.keyframes[i].pose.position.x;
    ys[i] = track.keyframes[i].pose.position.y;
  }
  const std::vector<double> mx = natural_spline_m(t, xs);
  const std::vector<double> my = natural_spline_m(t, ys);

  SampledTrajectory out;
  out.agent_id = track.agent_id;
  out.t0 = t.front();
  out.dt = dt;

  const double span = t.back() - t.front();
  // Epsilon guards against losing the final sample to float rounding.
  const std::size_t count = static_cast<std::size_t>(span / dt + 1e-9) + 1;
  out.poses.reserve(count);

  std::size_t seg = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double tk = std::min(out.time_at(k), t.back());
    while (seg + 2 < n && tk > t[seg + 1]) ++seg;
    Pose2D p;
    p.position = {spline_eval(t, xs, mx, seg, tk), spline_eval(t, ys, my, seg, tk)};
    const double u = (tk - t[seg]) / (t[seg + 1] - t[seg]);
    p.heading = interp_heading(track.keyframes[seg].pose.heading,
                               track.keyframes[seg + 1].pose.heading,
                               std::clamp(u, 0.0, 1.0));
    out.poses.push_back(p);
  }

  out.speeds.resize(out.poses.size(), 0.0);
  for (std::size_t k = 0; k + 1 < out.poses.size(); ++k) {
    out.speeds[k] = distance(out.poses[k + 1].position, out.poses[k].position) / dt;
  }
  if (out.poses.size() >= 2) out.speeds.back() = out.speeds[out.poses.size() - 2];
  return out;
}

PathArcLength arc_length(const SampledTrajectory& traj) {
  PathArcLength arcs;
  arcs.cumulative.resize(traj.poses.size(), 0.0);
  for (std::size_t i = 1; i < traj.poses.size(); ++i) {
    arcs.cumulative[i] =
        arcs.cumulative[i - 1] + distance(traj.poses[i].position, traj.poses[i - 1].position);
  }
  arcs.total = arcs.cumulative.empty() ? 0.0 : arcs.cumulative.back();
  return arcs;
}

Pose2D pose_at_arclength(const SampledTrajectory& traj, const PathArcLength& arcs, double s) {
  if (traj.poses.empty()) throw DomainError("pose_at_arclength: empty trajectory");
  if (traj.poses.size() == 1) return traj.poses.front();
  s = std::clamp(s, 0.0, arcs.total);

  // First segment whose far end reaches s; skips zero-length segments.
  auto it = std::lower_bound(arcs.cumulative.begin(), arcs.cumulative.end(), s);
  std::size_t i = (it == arcs.cumulative.begin())
                      ? 0
                      : static_cast<std::size_t>(it - arcs.cumulative.begin()) - 1;
  while (i + 1 < arcs.cumulative.size() && arcs.cumulative[i + 1] <= arcs.cumulative[i]) ++i;
  if (i + 1 >= arcs.cumulative.size()) return traj.poses.back();

  const double seg_len = arcs.cumulative[i + 1] - arcs.cumulative[i];
  const Vec2 a = traj.poses[i].position;
  const Vec2 b = traj.poses[i + 1].position;
  Pose2D out;
  if (seg_len <= 0.0) {
    out = traj.poses[i];
    return out;
  }
  const double u = (s - arcs.cumulative[i]) / seg_len;
  out.position = a + (b - a) * u;
  out.heading = std::atan2(b.y - a.y, b.x - a.x);
  return out;
}

}  // namespace veisim
