#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "slitwave/bohm.hpp"
#include "slitwave/grid.hpp"
#include "slitwave/profile.hpp"
#include "slitwave/scenario.hpp"

namespace slitwave {

/// Shortest exact decimal form of a double (17 significant digits).
std::string format_g17(double value);

/// Long-form grid CSV: header `x_nm,z_nm,density`, rows in z-major order
/// (row 0 = z_min), LF endings, 17-significant-digit floats.
void write_grid_csv(const std::filesystem::path& path, const FieldGrid& grid);

/// Inverse of write_grid_csv; grid extents are reconstructed from the
/// coordinate columns. Used for the exact round-trip check.
FieldGrid read_grid_csv(const std::filesystem::path& path);

/// Binary PGM (P5, maxval 255), row 0 = z_min, inverted gray palette:
/// white = zero density, black = max. The log mapping is
/// log(1 + v/v_max * 10^gamma) / log(1 + 10^gamma).
std::vector<unsigned char> render_pgm(const FieldGrid& grid, PgmMapping mapping,
                                      double gamma);

void write_bytes(const std::filesystem::path& path,
                 std::span<const unsigned char> bytes);

/// JSON array of {launch_x, status, points:[[x,z],...]}; plain decimal
/// numbers, no NaN possible (aborted paths simply stop early).
void write_trajectories_json(const std::filesystem::path& path,
                             std::span<const Trajectory> trajectories);

/// Fringe CSV: header `z_nm,x_nm,density_norm`.
void write_fringe_csv(const std::filesystem::path& path, const FringeProfile& profile);

/// Collects files created during a run so a failed run can remove its
/// partial outputs.
class OutputBatch {
 public:
  explicit OutputBatch(std::filesystem::path dir);
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path target(const std::string& filename);
  void commit() { committed_ = true; }
  ~OutputBatch();

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> created_;
  bool committed_ = false;
};

struct RunResult {
  double talbot = 0.0;
  int trajectories_total = 0;
  int trajectories_completed = 0;
  std::vector<std::string> files;
};

/// Executes a scenario end to end: density grid (CSV + PGM), trajectory
/// batch (JSON), fringe profiles (CSV). Deterministic for any worker count.
RunResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                       int workers);

}  // namespace slitwave
