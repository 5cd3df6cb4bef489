#include "slitwave/bohm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slitwave {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187;
constexpr double a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247;
constexpr double a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192;
constexpr double b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920;
constexpr double e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Attempt budget per trajectory; only the near-fractal lambda/d -> 0
// regime can exhaust it, where the step pins to dz_min (reported as a
// node abort together with the step statistics).
constexpr long kMaxAttempts = 5'000'000;

}  // namespace

Trajectory integrate(const ScenarioParams& p, const IntegratorConfig& cfg,
                     double launch_x, double z_start, double z_end,
                     std::span<const double> forced_planes) {
  validate(cfg);
  validate(p);
  if (!(z_start < z_end)) throw ConfigError("integrate: need z_start < z_end");

  Trajectory traj;
  traj.launch_x = launch_x;
  traj.points.emplace_back(launch_x, z_start);
  traj.step_stats.min_step = std::numeric_limits<double>::infinity();

  std::vector<double> planes(forced_planes.begin(), forced_planes.end());
  std::sort(planes.begin(), planes.end());
  planes.erase(std::unique(planes.begin(), planes.end()), planes.end());
  std::erase_if(planes, [&](double v) { return !(v > z_start && v < z_end); });

  if (density(p, launch_x, z_start) < cfg.node_eps) {
    traj.status = TrajectoryStatus::aborted_node;
    traj.step_stats.min_step = 0.0;
    return traj;
  }

  auto velocity = [&](double xx, double zz) {
    return velocity_slope(p, xx, zz, cfg.node_eps);
  };

  double x = launch_x;
  double z = z_start;
  double dz = std::clamp(cfg.dz_init, cfg.dz_min, cfg.dz_max);
  std::size_t plane_idx = 0;
  long attempts = 0;
  bool done = false;
  traj.status = TrajectoryStatus::completed;

  while (!done && z < z_end) {
    const double target =
        plane_idx < planes.size() ? std::min(planes[plane_idx], z_end) : z_end;

    double k1;
    try {
      k1 = velocity(x, z);
    } catch (const NodeSingularity&) {
      traj.status = TrajectoryStatus::aborted_node;
      break;
    }

    for (;;) {
      if (++attempts > kMaxAttempts) {
        traj.status = TrajectoryStatus::aborted_node;
        done = true;
        break;
      }
      const bool lands = dz >= target - z;
      const double h = lands ? target - z : dz;
      const double z_new = lands ? target : z + h;

      bool node = false;
      double x5 = 0.0;
      double err = 0.0;
      try {
        const double k2 = velocity(x + h * (a21 * k1), z + c2 * h);
        const double k3 = velocity(x + h * (a31 * k1 + a32 * k2), z + c3 * h);
        const double k4 =
            velocity(x + h * (a41 * k1 + a42 * k2 + a43 * k3), z + c4 * h);
        const double k5 = velocity(
            x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), z + c5 * h);
        const double k6 = velocity(
            x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5),
            z_new);
        x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = velocity(x5, z_new);
        err = std::abs(
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
      } catch (const NodeSingularity&) {
        node = true;
      }

      const bool finite = !node && std::isfinite(x5) && std::isfinite(err);
      const double tol = cfg.rel_tol * std::max(p.sigma, std::abs(x));
      if ((node || !finite || err > tol) && h > cfg.dz_min) {
        dz = std::max(0.5 * h, cfg.dz_min);
        continue;
      }
      if (node || !finite) {
        traj.status = node ? TrajectoryStatus::aborted_node
                           : TrajectoryStatus::aborted_bounds;
        done = true;
        break;
      }

      x = x5;
      z = z_new;
      traj.points.emplace_back(x, z);
      // local error amplified by the remaining packet spreading (the flow
      // Jacobian of the Gaussian velocity field from z to z_end)
      traj.err_estimate += err * (sigma_z(p, z_end) / sigma_z(p, z));
      traj.step_stats.steps += 1;
      traj.step_stats.min_step = std::min(traj.step_stats.min_step, h);
      traj.step_stats.max_step = std::max(traj.step_stats.max_step, h);
      if (plane_idx < planes.size() && z == planes[plane_idx]) ++plane_idx;
      if (!lands && err < tol / 32.0) dz = std::min(2.0 * h, cfg.dz_max);
      break;
    }
  }

  if (traj.step_stats.steps == 0) traj.step_stats.min_step = 0.0;
  if (traj.status == TrajectoryStatus::completed && z < z_end)
    traj.status = TrajectoryStatus::aborted_node;
  return traj;
}

Eigen::ArrayXd launch_grid(const ScenarioParams& p, int per_slit,
                           double half_span_sigmas) {
  if (per_slit < 1) throw ConfigError("launch_grid: per_slit must be >= 1");
  if (!(half_span_sigmas >= 0.0))
    throw ConfigError("launch_grid: half_span_sigmas must be >= 0");
  validate(p);

  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(p.slit_count) * per_slit);
  const double span = half_span_sigmas * p.sigma;
  for (int n = 0; n < p.slit_count; ++n) {
    const double x0 = slit_center(p, n);
    if (per_slit == 1) {
      pts.push_back(x0);
      continue;
    }
    for (int j = 0; j < per_slit; ++j) {
      // (2j - (m-1))/(m-1): exact sign symmetry, so mirrored launches are
      // exact negations of each other.
      const double t = (2.0 * j - (per_slit - 1)) / (per_slit - 1);
      pts.push_back(x0 + span * t);
    }
  }
  std::sort(pts.begin(), pts.end());
  const double eps = 1e-9 * std::max(p.slit_pitch, p.sigma);
  std::vector<double> unique_pts;
  unique_pts.reserve(pts.size());
  for (double v : pts) {
    if (unique_pts.empty() || v - unique_pts.back() > eps) unique_pts.push_back(v);
  }
  return Eigen::Map<const Eigen::ArrayXd>(unique_pts.data(),
                                          static_cast<Eigen::Index>(unique_pts.size()));
}

}  // namespace slitwave
