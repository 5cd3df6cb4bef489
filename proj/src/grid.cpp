#include "slitwave/grid.hpp"

#include <cmath>

#include "slitwave/parallel.hpp"
#include "slitwave/wavefield.hpp"

namespace slitwave {

FieldGrid fill_density_grid(const ScenarioParams& p, const GridExtents& extents,
                            int workers) {
  validate(p);
  validate(extents);
  FieldGrid grid;
  grid.extents = extents;
  grid.samples.resize(extents.nz, extents.nx);
  parallel_for(extents.nz, workers, [&](long j) {
    const double z = grid.z_at(static_cast<int>(j));
    for (int i = 0; i < extents.nx; ++i)
      grid.samples(j, i) = density(p, grid.x_at(i), z);
  });
  return grid;
}

FringeProfile sample_fringe(const ScenarioParams& p, double z, double x_min,
                            double x_max, int nx) {
  validate(p);
  if (!(x_min < x_max) || nx < 2)
    throw ConfigError("sample_fringe: need x_min < x_max and nx >= 2");
  if (!(z >= 0.0)) throw PlaneOutOfRange("sample_fringe: need z >= 0");
  FringeProfile profile;
  profile.z = z;
  profile.xs = Eigen::ArrayXd::LinSpaced(nx, x_min, x_max);
  profile.values.resize(nx);
  for (int i = 0; i < nx; ++i) profile.values[i] = density(p, profile.xs[i], z);
  const double peak = profile.values.maxCoeff();
  if (peak > 0.0) profile.values /= peak;
  return profile;
}

FringeProfile extract_fringe(const FieldGrid& grid, double z) {
  const auto& e = grid.extents;
  if (!(z >= e.z_min && z <= e.z_max))
    throw PlaneOutOfRange("extract_fringe: plane outside simulated z range");
  int j = 0;
  if (e.nz > 1) {
    const double t = (z - e.z_min) / (e.z_max - e.z_min) * (e.nz - 1);
    j = static_cast<int>(std::lround(t));
  }
  FringeProfile profile;
  profile.z = grid.z_at(j);
  profile.xs = Eigen::ArrayXd::LinSpaced(e.nx, e.x_min, e.x_max);
  profile.values = grid.samples.row(j).transpose();
  const double peak = profile.values.maxCoeff();
  if (peak > 0.0) profile.values /= peak;
  return profile;
}

}  // namespace slitwave
