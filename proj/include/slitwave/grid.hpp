#pragma once

#include <Eigen/Core>

#include "slitwave/errors.hpp"
#include "slitwave/params.hpp"
#include "slitwave/profile.hpp"

namespace slitwave {

using RowArrayXXd =
    Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct GridExtents {
  double x_min = 0.0, x_max = 0.0;
  double z_min = 0.0, z_max = 0.0;
  int nx = 0, nz = 0;
};

inline void validate(const GridExtents& e) {
  if (!(e.x_min < e.x_max) || !(e.z_min <= e.z_max))
    throw ConfigError("grid: extents must be ordered");
  if (e.nx < 1 || e.nz < 1) throw ConfigError("grid: nx, nz must be >= 1");
  if (!(e.z_min >= 0.0)) throw ConfigError("grid: z_min must be >= 0");
}

/// Dense density samples over (x, z). Row j holds the plane z_at(j),
/// row 0 = z_min; samples(j, i) is the point (x_at(i), z_at(j)).
struct FieldGrid {
  GridExtents extents;
  RowArrayXXd samples;  // nz rows, nx cols

  double x_at(int i) const {
    if (extents.nx == 1) return extents.x_min;
    return extents.x_min +
           (extents.x_max - extents.x_min) * i / double(extents.nx - 1);
  }
  double z_at(int j) const {
    if (extents.nz == 1) return extents.z_min;
    return extents.z_min +
           (extents.z_max - extents.z_min) * j / double(extents.nz - 1);
  }
};

/// Fills the density field row-parallel; deterministic for any worker
/// count (each row writes only its own slice).
FieldGrid fill_density_grid(const ScenarioParams& p, const GridExtents& extents,
                            int workers = 1);

/// Density profile sampled directly from the analytic field at exact z,
/// max-normalized to 1.
FringeProfile sample_fringe(const ScenarioParams& p, double z, double x_min,
                            double x_max, int nx);

/// Nearest-row cross-section of an already computed grid, max-normalized.
/// Throws PlaneOutOfRange when z is outside [z_min, z_max].
FringeProfile extract_fringe(const FieldGrid& grid, double z);

}  // namespace slitwave
