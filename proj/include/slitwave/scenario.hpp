#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slitwave/bohm.hpp"
#include "slitwave/grid.hpp"
#include "slitwave/params.hpp"

namespace slitwave {

enum class PgmMapping { linear, log };

struct TrajectoryPlan {
  int per_slit = 0;  // 0 disables the trajectory batch
  double half_span_sigmas = 2.0;
  double z_start = 0.0;
  double z_end = 0.0;
};

/// Derivation inputs kept alongside the derived fields so CLI overrides
/// can rebuild grid extents and plans after the physics changed.
struct ScenarioKnobs {
  double zmax_talbots = 4.0;
  std::optional<double> x_half_span;        // default: N*d/2
  int grid_nx = 1000;
  int grid_nz = 800;
  int per_slit = 14;
  double half_span_sigmas = 2.0;
  std::optional<double> traj_zmax_talbots;  // default: zmax_talbots
  std::vector<double> fringe_talbots = {0.5, 1.0};
  std::optional<std::vector<double>> fringe_planes_nm;  // overrides fringe_talbots
  double rel_tol = 1e-8;
};

/// Everything one `run` needs: physics parameters, grid extents, the
/// trajectory batch plan, fringe cross-section planes and image mapping.
struct Scenario {
  std::string name;
  ScenarioParams params;
  ScenarioKnobs knobs;
  GridExtents grid;
  TrajectoryPlan plan;
  IntegratorConfig integrator;
  std::vector<double> fringe_planes;  // z values [nm], within grid z range
  PgmMapping pgm_mapping = PgmMapping::log;
  double pgm_gamma = 2.0;
};

/// Recomputes grid, plan, integrator and fringe planes from params+knobs.
void derive_scenario(Scenario& scenario);

/// Built-in presets: neutron7, talbot512, grating64, fullerene9.
Scenario preset(const std::string& name);

bool is_preset_name(const std::string& name);

/// Flat key=value config file; unknown keys are rejected. Keys mirror the
/// ScenarioParams field names plus grid/trajectory keys (see README).
Scenario load_config(const std::string& path);

/// CLI flag overrides; applied after preset/config resolution.
struct Overrides {
  std::optional<double> wavelength;
  std::optional<int> slit_count;
  std::optional<double> slit_pitch;
  std::optional<double> slit_width;
  std::optional<double> sigma;
  std::optional<int> grid_nx;
  std::optional<int> grid_nz;
  std::optional<double> zmax_talbots;
  std::optional<int> per_slit;
};

void apply_overrides(Scenario& scenario, const Overrides& overrides);

}  // namespace slitwave
