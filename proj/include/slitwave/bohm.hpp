#pragma once

#include <Eigen/Core>
#include <numbers>
#include <span>
#include <vector>

#include "slitwave/params.hpp"
#include "slitwave/wavefield.hpp"

namespace slitwave {

struct IntegratorConfig {
  double dz_init = 0.0;
  double dz_min = 0.0;
  double dz_max = 0.0;
  double rel_tol = 1e-8;
  double node_eps = kNodeEpsilon;  // squared-modulus abort threshold
};

inline void validate(const IntegratorConfig& c) {
  if (!(c.dz_min > 0.0 && c.dz_min <= c.dz_init && c.dz_init <= c.dz_max))
    throw ConfigError("integrator: need 0 < dz_min <= dz_init <= dz_max");
  if (!(c.rel_tol > 0.0)) throw ConfigError("integrator: rel_tol must be > 0");
  if (!(c.node_eps >= 0.0)) throw ConfigError("integrator: node_eps must be >= 0");
}

enum class TrajectoryStatus { completed, aborted_node, aborted_bounds };

struct StepStats {
  long steps = 0;
  double min_step = 0.0;
  double max_step = 0.0;
};

/// One Bohmian path x(z). Points are (x, z) with z strictly increasing;
/// err_estimate accumulates the embedded error estimates of accepted
/// steps, each scaled by the packet-spreading factor remaining to z_end.
struct Trajectory {
  std::vector<Eigen::Vector2d> points;
  double launch_x = 0.0;
  TrajectoryStatus status = TrajectoryStatus::completed;
  StepStats step_stats;
  double err_estimate = 0.0;
};

/// Guidance slope dx/dz = (lambda/2pi) * Im((d/dx psi)/psi); the paraxial
/// de Broglie substitution removes mass and forward velocity entirely.
inline double velocity_slope(const ScenarioParams& p, double x, double z,
                             double node_eps = kNodeEpsilon) {
  return p.wavelength / (2.0 * std::numbers::pi) * gradient_log(p, x, z, node_eps).imag();
}

/// Adaptive embedded Runge-Kutta 5(4) integration of the guidance equation
/// from (launch_x, z_start) to z_end. Steps are halved when the embedded
/// error estimate exceeds rel_tol * max(sigma, |x|) or when a stage hits a
/// node; at dz_min a node aborts the trajectory. Points are recorded at
/// every accepted step, with exact landings forced on the requested planes
/// and on z_end.
Trajectory integrate(const ScenarioParams& p, const IntegratorConfig& cfg,
                     double launch_x, double z_start, double z_end,
                     std::span<const double> forced_planes = {});

/// Per slit, per_slit equally spaced launch points spanning
/// [x0 - k*sigma, x0 + k*sigma], merged over all slits, deduplicated and
/// sorted ascending. per_slit = 1 collapses to the slit centers.
Eigen::ArrayXd launch_grid(const ScenarioParams& p, int per_slit,
                           double half_span_sigmas);

}  // namespace slitwave
