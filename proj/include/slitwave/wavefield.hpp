#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "slitwave/compensated.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/params.hpp"

namespace slitwave {

/// Squared-modulus threshold below which the velocity field is treated as
/// undefined (wave-function node). Far below any resolvable density, above
/// the denormal floor.
inline constexpr double kNodeEpsilon = 1e-30;

/// sigma * D(z) with D(z) = 1 + i*z*lambda/(4*pi*sigma^2). Purely real at
/// z = 0; |value| is the instantaneous Gaussian width sigma_z.
struct ComplexSpreading {
  Complex value;
};

/// q = lambda/(4*pi*sigma^2); qz is the dimensionless spreading parameter.
inline double spreading_rate(const ScenarioParams& p) {
  return p.wavelength / (4.0 * std::numbers::pi * p.sigma * p.sigma);
}

/// D(z) = 1 + i*q*z.
inline Complex spreading_factor(const ScenarioParams& p, double z) {
  return Complex(1.0, spreading_rate(p) * z);
}

inline ComplexSpreading spreading(const ScenarioParams& p, double z) {
  return ComplexSpreading{p.sigma * spreading_factor(p, z)};
}

/// Instantaneous Gaussian width sigma_z = sigma*sqrt(1 + (q*z)^2).
inline double sigma_z(const ScenarioParams& p, double z) {
  const double qz = spreading_rate(p) * z;
  return p.sigma * std::sqrt(1.0 + qz * qz);
}

/// Single-slit Gaussian packet, unit peak at the slit center at z = 0.
/// Constant prefactor, constant phase and the common plane-wave factor are
/// dropped: they are identical across slits and cancel in density ratios
/// and in Im(grad psi / psi).
inline Complex packet(const ScenarioParams& p, int slit_index, double x, double z) {
  const Complex D = spreading_factor(p, z);
  const double dx = x - slit_center(p, slit_index);
  const Complex exponent = -dx * dx / (4.0 * p.sigma * p.sigma * D);
  return std::exp(exponent) / std::sqrt(D);
}

namespace detail {

/// Per-slit terms with exponent below -kTermLogCutoff are skipped; a
/// dropped term is < 9e-27 of the unit packet peak.
inline constexpr double kTermLogCutoff = 60.0;

/// Slit-sum accumulator state: sum of packet terms w_n (common factors
/// removed) and sum of w_n*(x - x0_n), which feed superpose/density and
/// the log-gradient respectively.
struct SlitScan {
  Complex sum_w{0.0, 0.0};
  Complex sum_wdx{0.0, 0.0};
  Complex spread_D{1.0, 0.0};  // D(z)
  double common_phase = 0.0;   // kappa*x^2, multiplies as exp(i*...)
};

/// Sums the N packet terms at (x,z). Terms are evaluated with the
/// n-independent exponent part kappa*x^2 split off, so phases stay small
/// and accurate even at z ~ 1e9 nm. Slits are combined in mirror pairs
/// (n, N-1-n), which makes density(x) == density(-x) and the vanishing of
/// sum_wdx on the symmetry axis exact in floating point; accumulation is
/// Kahan-compensated for the near-cancelling many-slit sums.
inline SlitScan scan_slits(const ScenarioParams& p, double x, double z) {
  SlitScan out;
  const double q = spreading_rate(p);
  const double qz = q * z;
  const Complex D(1.0, qz);
  const double sz2 = p.sigma * p.sigma * (1.0 + qz * qz);  // sigma_z^2
  const double inv4 = 1.0 / (4.0 * sz2);
  const double kappa = qz * inv4;
  out.spread_D = D;
  out.common_phase = kappa * x * x;

  const int n_slits = p.slit_count;
  const double half = 0.5 * (n_slits - 1);
  const double d = p.slit_pitch;

  CompensatedSum<Complex> acc_w;
  CompensatedSum<Complex> acc_wdx;

  auto term = [&](int n, Complex& w, double& dx) -> bool {
    const double x0 = (static_cast<double>(n) - half) * d;
    dx = x - x0;
    const double re = -dx * dx * inv4;
    if (re < -kTermLogCutoff) return false;
    const double im = kappa * x0 * (x0 - 2.0 * x);
    w = std::exp(re) * Complex(std::cos(im), std::sin(im));
    return true;
  };

  for (int k = 0; 2 * k < n_slits; ++k) {
    const int lo = k;
    const int hi = n_slits - 1 - k;
    Complex w_lo, w_hi;
    double dx_lo, dx_hi;
    const bool has_lo = term(lo, w_lo, dx_lo);
    if (hi == lo) {
      if (has_lo) {
        acc_w.add(w_lo);
        acc_wdx.add(w_lo * dx_lo);
      }
      continue;
    }
    const bool has_hi = term(hi, w_hi, dx_hi);
    if (has_lo && has_hi) {
      acc_w.add(w_lo + w_hi);
      acc_wdx.add(w_lo * dx_lo + w_hi * dx_hi);
    } else if (has_lo) {
      acc_w.add(w_lo);
      acc_wdx.add(w_lo * dx_lo);
    } else if (has_hi) {
      acc_w.add(w_hi);
      acc_wdx.add(w_hi * dx_hi);
    }
  }
  out.sum_w = acc_w.value();
  out.sum_wdx = acc_wdx.value();
  return out;
}

inline double density_from(const SlitScan& s, int n_slits) {
  const double norm2 = std::norm(s.sum_w);
  const double abs_D = std::abs(s.spread_D);
  return norm2 / (static_cast<double>(n_slits) * n_slits * abs_D);
}

}  // namespace detail

/// Equal-weight superposition (1/N) * sum_n packet_n at (x,z).
inline Complex superpose(const ScenarioParams& p, double x, double z) {
  const auto s = detail::scan_slits(p, x, z);
  const Complex phase(std::cos(s.common_phase), std::sin(s.common_phase));
  return s.sum_w * phase / (std::sqrt(s.spread_D) * static_cast<double>(p.slit_count));
}

/// Probability density |superpose|^2 (arbitrary units, unit-peak packets).
inline double density(const ScenarioParams& p, double x, double z) {
  return detail::density_from(detail::scan_slits(p, x, z), p.slit_count);
}

/// Analytic log-derivative (d/dx psi)/psi of the superposed field.
/// Throws NodeSingularity when the density at (x,z) is below node_eps.
inline Complex gradient_log(const ScenarioParams& p, double x, double z,
                            double node_eps = kNodeEpsilon) {
  const auto s = detail::scan_slits(p, x, z);
  if (detail::density_from(s, p.slit_count) < node_eps)
    throw NodeSingularity("gradient_log: wave-function node at requested point");
  const Complex D = s.spread_D;
  return -s.sum_wdx / (s.sum_w * (2.0 * p.sigma * p.sigma) * D);
}

/// Quantum-potential core -[rho''/(2 rho) - (rho'/(2 rho))^2] along x, by
/// central differences of the analytic density with stencil step h. The
/// hbar^2/2m prefactor is factored out; units 1/nm^2. Diagnostic only,
/// not used by the trajectory integrator.
inline double quantum_potential(const ScenarioParams& p, double x, double z, double h) {
  if (!(h > 0.0)) throw ConfigError("quantum_potential: stencil step must be > 0");
  const double r_m = density(p, x - h, z);
  const double r_0 = density(p, x, z);
  const double r_p = density(p, x + h, z);
  if (r_m < kNodeEpsilon || r_0 < kNodeEpsilon || r_p < kNodeEpsilon)
    throw NodeSingularity("quantum_potential: stencil touches a node");
  const double d1 = (r_p - r_m) / (2.0 * h);
  const double d2 = (r_p - 2.0 * r_0 + r_m) / (h * h);
  const double ratio1 = d1 / (2.0 * r_0);
  return -(d2 / (2.0 * r_0) - ratio1 * ratio1);
}

}  // namespace slitwave
