#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "slitwave/errors.hpp"

namespace slitwave {

using Complex = std::complex<double>;

/// Immutable description of one scattering scenario. All lengths in nm; time
/// never appears: z is the evolution parameter throughout (paraxial beam).
struct ScenarioParams {
  double wavelength = 0.0;  ///< de Broglie wavelength lambda [nm]
  int slit_count = 0;       ///< N
  double slit_pitch = 0.0;  ///< d, center-to-center distance [nm]
  double slit_width = 0.0;  ///< a, metric slit width [nm]
  double sigma = 0.0;       ///< effective half-width [nm], default a/(2*sqrt(2))
};

/// Effective Gaussian half-width of a slit of metric width a.
inline double default_sigma(double slit_width) {
  return slit_width / (2.0 * std::sqrt(2.0));
}

inline void validate(const ScenarioParams& p) {
  if (!(p.wavelength > 0.0)) throw ConfigError("wavelength must be > 0");
  if (p.slit_count < 1) throw ConfigError("slit_count must be >= 1");
  if (!(p.slit_pitch > 0.0)) throw ConfigError("slit_pitch must be > 0");
  if (!(p.slit_width > 0.0)) throw ConfigError("slit_width must be > 0");
  if (!(p.sigma > 0.0)) throw ConfigError("sigma must be > 0");
  if (!(p.slit_width <= p.slit_pitch))
    throw ConfigError("slit_width must not exceed slit_pitch");
  if (!(p.sigma < 0.5 * p.slit_pitch))
    throw ConfigError("sigma must be below slit_pitch/2");
}

inline ScenarioParams make_params(double wavelength, int slit_count, double slit_pitch,
                                  double slit_width, double sigma = 0.0) {
  ScenarioParams p;
  p.wavelength = wavelength;
  p.slit_count = slit_count;
  p.slit_pitch = slit_pitch;
  p.slit_width = slit_width;
  p.sigma = sigma > 0.0 ? sigma : default_sigma(slit_width);
  validate(p);
  return p;
}

/// Center of slit n; the grating is symmetric about x = 0.
inline double slit_center(const ScenarioParams& p, int n) {
  return (static_cast<double>(n) - 0.5 * (p.slit_count - 1)) * p.slit_pitch;
}

/// Self-imaging period 2*d^2/lambda of the grating.
inline double talbot_length(const ScenarioParams& p) {
  return 2.0 * p.slit_pitch * p.slit_pitch / p.wavelength;
}

}  // namespace slitwave
