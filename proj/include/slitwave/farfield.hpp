#pragma once

#include <cmath>
#include <numbers>

#include "slitwave/params.hpp"
#include "slitwave/wavefield.hpp"

namespace slitwave {

/// Fill width for the removable singularities of the grating function.
/// Inside |zeta - 2*pi*k| < this, the limit N^2 is returned; the Taylor
/// deficit at the boundary is (N^2-1)/12 * 1e-12, far below 1e-4*N^2 for
/// every grating size used here.
inline constexpr double kGratingFillWidth = 1e-6;

/// Dimensionless interference argument zeta(x,z) = x*d*(q*z) / (2*sigma_z^2).
inline double zeta(const ScenarioParams& p, double x, double z) {
  const double qz = spreading_rate(p) * z;
  const double sz2 = p.sigma * p.sigma * (1.0 + qz * qz);
  return x * p.slit_pitch * qz / (2.0 * sz2);
}

/// Gaussian envelope exp(-x^2 / (2 sigma_z^2)) / sigma_z. The constant
/// A^2/N^2 prefactor is dropped, matching the wavefield normalization.
inline double envelope(const ScenarioParams& p, double x, double z) {
  const double sz = sigma_z(p, z);
  return std::exp(-x * x / (2.0 * sz * sz)) / sz;
}

/// Grating function sin^2(N*zeta/2) / sin^2(zeta/2) with removable
/// singularities at zeta = 2*pi*k filled with the limit N^2.
inline double grating_factor(double zeta_value, int n_slits) {
  const double offset = std::remainder(zeta_value, 2.0 * std::numbers::pi);
  if (std::abs(offset) < kGratingFillWidth)
    return static_cast<double>(n_slits) * n_slits;
  const double ratio =
      std::sin(0.5 * n_slits * zeta_value) / std::sin(0.5 * zeta_value);
  return ratio * ratio;
}

/// Closed-form far-field intensity: envelope times grating function.
inline double intensity(const ScenarioParams& p, double x, double z) {
  return envelope(p, x, z) * grating_factor(zeta(p, x, z), p.slit_count);
}

struct FarFieldPoint {
  double x = 0.0;
  double z = 0.0;
  double zeta = 0.0;
  double envelope = 0.0;
  double intensity = 0.0;
};

inline FarFieldPoint far_field_point(const ScenarioParams& p, double x, double z) {
  FarFieldPoint out;
  out.x = x;
  out.z = z;
  out.zeta = zeta(p, x, z);
  out.envelope = envelope(p, x, z);
  out.intensity = out.envelope * grating_factor(out.zeta, p.slit_count);
  return out;
}

}  // namespace slitwave
