#include "slitwave/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "slitwave/parallel.hpp"

namespace slitwave {

std::string format_g17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

void write_grid_csv(const std::filesystem::path& path, const FieldGrid& grid) {
  auto out = open_out(path, false);
  std::string body;
  body.reserve(64);
  out << "x_nm,z_nm,density\n";
  for (int j = 0; j < grid.extents.nz; ++j) {
    const std::string z_txt = format_g17(grid.z_at(j));
    for (int i = 0; i < grid.extents.nx; ++i) {
      body.clear();
      body += format_g17(grid.x_at(i));
      body += ',';
      body += z_txt;
      body += ',';
      body += format_g17(grid.samples(j, i));
      body += '\n';
      out << body;
    }
  }
  finish(out, path);
}

FieldGrid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x_nm,z_nm,density")
    throw IoError("grid CSV header mismatch: " + path.string());

  std::vector<double> xs, zs, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double x, z, v;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &z, &v) != 3)
      throw IoError("grid CSV row parse failure: " + path.string());
    xs.push_back(x);
    zs.push_back(z);
    vs.push_back(v);
  }
  if (vs.empty()) throw IoError("grid CSV has no samples: " + path.string());

  int nx = 0;
  while (nx < static_cast<int>(zs.size()) && zs[nx] == zs[0]) ++nx;
  const int nz = static_cast<int>(vs.size()) / nx;
  if (static_cast<std::size_t>(nx) * nz != vs.size())
    throw IoError("grid CSV is not rectangular: " + path.string());

  FieldGrid grid;
  grid.extents.x_min = xs.front();
  grid.extents.x_max = xs[nx - 1];
  grid.extents.z_min = zs.front();
  grid.extents.z_max = zs.back();
  grid.extents.nx = nx;
  grid.extents.nz = nz;
  grid.samples = Eigen::Map<const RowArrayXXd>(vs.data(), nz, nx);
  return grid;
}

std::vector<unsigned char> render_pgm(const FieldGrid& grid, PgmMapping mapping,
                                      double gamma) {
  const int nx = grid.extents.nx;
  const int nz = grid.extents.nz;
  std::string header = "P5\n" + std::to_string(nx) + " " + std::to_string(nz) + "\n255\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  bytes.reserve(bytes.size() + static_cast<std::size_t>(nx) * nz);

  const double v_max = grid.samples.maxCoeff();
  const double boost = std::pow(10.0, gamma);
  const double log_norm = std::log1p(boost);
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nx; ++i) {
      double t = 0.0;
      if (v_max > 0.0) {
        const double v = grid.samples(j, i) / v_max;
        t = (mapping == PgmMapping::linear) ? v : std::log1p(v * boost) / log_norm;
      }
      const int gray = 255 - static_cast<int>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
      bytes.push_back(static_cast<unsigned char>(gray));
    }
  }
  return bytes;
}

void write_bytes(const std::filesystem::path& path,
                 std::span<const unsigned char> bytes) {
  auto out = open_out(path, true);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  finish(out, path);
}

namespace {

const char* status_name(TrajectoryStatus status) {
  switch (status) {
    case TrajectoryStatus::completed: return "completed";
    case TrajectoryStatus::aborted_node: return "aborted_node";
    case TrajectoryStatus::aborted_bounds: return "aborted_bounds";
  }
  return "unknown";
}

}  // namespace

void write_trajectories_json(const std::filesystem::path& path,
                             std::span<const Trajectory> trajectories) {
  auto out = open_out(path, false);
  out << "[\n";
  for (std::size_t t = 0; t < trajectories.size(); ++t) {
    const auto& traj = trajectories[t];
    out << "  {\"launch_x\": " << format_g17(traj.launch_x)
        << ", \"status\": \"" << status_name(traj.status) << "\", \"points\": [";
    for (std::size_t k = 0; k < traj.points.size(); ++k) {
      if (k != 0) out << ", ";
      out << '[' << format_g17(traj.points[k].x()) << ", "
          << format_g17(traj.points[k].y()) << ']';
    }
    out << "]}";
    if (t + 1 != trajectories.size()) out << ',';
    out << '\n';
  }
  out << "]\n";
  finish(out, path);
}

void write_fringe_csv(const std::filesystem::path& path, const FringeProfile& profile) {
  auto out = open_out(path, false);
  out << "z_nm,x_nm,density_norm\n";
  const std::string z_txt = format_g17(profile.z);
  for (Eigen::Index i = 0; i < profile.xs.size(); ++i)
    out << z_txt << ',' << format_g17(profile.xs[i]) << ','
        << format_g17(profile.values[i]) << '\n';
  finish(out, path);
}

OutputBatch::OutputBatch(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create output directory: " + dir_.string());
}

std::filesystem::path OutputBatch::target(const std::string& filename) {
  std::filesystem::path p = dir_ / filename;
  created_.push_back(p);
  return p;
}

OutputBatch::~OutputBatch() {
  if (committed_) return;
  for (const auto& p : created_) {
    std::error_code ec;
    std::filesystem::remove(p, ec);
  }
}

RunResult run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir,
                       int workers) {
  RunResult result;
  result.talbot = talbot_length(scenario.params);
  OutputBatch batch(out_dir);

  FieldGrid grid = fill_density_grid(scenario.params, scenario.grid, workers);
  // absolute scale is arbitrary once the constant prefactors are dropped:
  // every emitted grid/profile is max-normalized to 1
  const double peak = grid.samples.maxCoeff();
  if (peak > 0.0) grid.samples /= peak;
  {
    const auto csv = batch.target(scenario.name + "_grid.csv");
    write_grid_csv(csv, grid);
    result.files.push_back(csv.filename().string());
    const auto pgm = batch.target(scenario.name + "_grid.pgm");
    write_bytes(pgm, render_pgm(grid, scenario.pgm_mapping, scenario.pgm_gamma));
    result.files.push_back(pgm.filename().string());
  }

  if (scenario.plan.per_slit >= 1) {
    const Eigen::ArrayXd launches = launch_grid(
        scenario.params, scenario.plan.per_slit, scenario.plan.half_span_sigmas);
    std::vector<Trajectory> trajectories(launches.size());
    parallel_for(launches.size(), workers, [&](long i) {
      trajectories[i] =
          integrate(scenario.params, scenario.integrator, launches[i],
                    scenario.plan.z_start, scenario.plan.z_end, scenario.fringe_planes);
    });
    result.trajectories_total = static_cast<int>(trajectories.size());
    for (const auto& t : trajectories)
      if (t.status == TrajectoryStatus::completed) ++result.trajectories_completed;
    const auto json = batch.target(scenario.name + "_trajectories.json");
    write_trajectories_json(json, trajectories);
    result.files.push_back(json.filename().string());
  }

  for (std::size_t k = 0; k < scenario.fringe_planes.size(); ++k) {
    const FringeProfile profile =
        sample_fringe(scenario.params, scenario.fringe_planes[k],
                      scenario.grid.x_min, scenario.grid.x_max, scenario.grid.nx);
    const auto csv = batch.target(scenario.name + "_fringe_" + std::to_string(k) + ".csv");
    write_fringe_csv(csv, profile);
    result.files.push_back(csv.filename().string());
  }

  batch.commit();
  return result;
}

}  // namespace slitwave
