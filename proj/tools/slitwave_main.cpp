#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "slitwave/io.hpp"
#include "slitwave/oracle.hpp"
#include "slitwave/parallel.hpp"
#include "slitwave/scenario.hpp"
#include "slitwave/wavefield.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct RunArgs {
  std::string scenario;
  std::string out_dir = ".";
  int threads = 0;  // 0 -> hardware default
  slitwave::Overrides overrides;
};

int do_run(const RunArgs& args) {
  slitwave::Scenario scenario;
  if (slitwave::is_preset_name(args.scenario)) {
    scenario = slitwave::preset(args.scenario);
  } else if (std::filesystem::exists(args.scenario)) {
    scenario = slitwave::load_config(args.scenario);
  } else {
    throw slitwave::ConfigError("unknown scenario '" + args.scenario +
                                "' (not a preset, not a readable config file)");
  }
  slitwave::apply_overrides(scenario, args.overrides);

  const int workers = args.threads > 0 ? args.threads : slitwave::default_workers();
  const slitwave::RunResult result =
      slitwave::run_scenario(scenario, args.out_dir, workers);

  std::cout << scenario.name << ": z_T=" << slitwave::format_g17(result.talbot)
            << " nm, grid " << scenario.grid.nx << "x" << scenario.grid.nz
            << ", trajectories " << result.trajectories_completed << "/"
            << result.trajectories_total << " completed, wrote "
            << result.files.size() << " files to " << args.out_dir << "\n";
  return kExitOk;
}

struct OracleArgs {
  double x1 = 0.0;
  double z = 100.0;
  double lambda = 0.5;
  double width = 1.0;
  double sigma = 0.0;
  double half_range = 0.0;
  int points = 4096;
  std::string scheme = "gauss";
};

int do_oracle(const OracleArgs& args) {
  using namespace slitwave;
  const ScenarioParams p = make_params(args.lambda, 1, 10.0 * args.width,
                                       args.width, args.sigma);
  oracle::QuadratureSpec spec;
  const double b = p.sigma * std::sqrt(2.0);
  spec.half_range = args.half_range > 0.0 ? args.half_range : 8.0 * b;
  spec.n_points = args.points;
  spec.scheme = args.scheme == "trapezoid" ? oracle::Scheme::trapezoid
                                           : oracle::Scheme::gauss_legendre;

  const Complex quad = oracle::convolve_kernel(p, spec, args.x1, args.z);
  const Complex closed = packet(p, 0, args.x1, args.z);
  const Complex ratio = quad / closed;
  std::cout << "quadrature  = " << format_g17(quad.real()) << " + "
            << format_g17(quad.imag()) << "i\n"
            << "closed form = " << format_g17(closed.real()) << " + "
            << format_g17(closed.imag()) << "i\n"
            << "ratio       = " << format_g17(ratio.real()) << " + "
            << format_g17(ratio.imag()) << "i (|ratio| = "
            << format_g17(std::abs(ratio)) << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-slit matter-wave interference: near/far-field densities and "
               "Bohmian trajectories"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario and write data files");
  run->add_option("scenario", run_args.scenario,
                  "Preset (neutron7|talbot512|grating64|fullerene9) or config file")
      ->required();
  run->add_option("--out", run_args.out_dir, "Output directory");
  run->add_option("--threads", run_args.threads, "Worker threads (0 = auto)");
  double lambda_nm = 0, pitch_nm = 0, width_nm = 0, sigma_nm = 0, zmax_t = 0;
  int slits = 0, grid_nx = 0, grid_nz = 0, per_slit = 0;
  run->add_option("--lambda-nm", lambda_nm, "de Broglie wavelength [nm]");
  run->add_option("--slits", slits, "Number of slits N");
  run->add_option("--pitch-nm", pitch_nm, "Slit pitch d [nm]");
  run->add_option("--width-nm", width_nm, "Slit width a [nm]");
  run->add_option("--sigma-nm", sigma_nm, "Effective half-width sigma [nm]");
  run->add_option("--grid-nx", grid_nx, "Grid columns");
  run->add_option("--grid-nz", grid_nz, "Grid rows");
  run->add_option("--zmax-talbots", zmax_t, "Grid depth in Talbot lengths");
  run->add_option("--per-slit", per_slit, "Trajectory launches per slit");

  OracleArgs oracle_args;
  auto* orc = app.add_subcommand("oracle",
                                 "Path-integral quadrature vs closed-form packet");
  orc->group("");  // hidden; manual-inspection tool
  orc->add_option("--x1-nm", oracle_args.x1, "Observation offset [nm]")->required();
  orc->add_option("--z-nm", oracle_args.z, "Propagation distance [nm]");
  orc->add_option("--lambda-nm", oracle_args.lambda, "Wavelength [nm]");
  orc->add_option("--width-nm", oracle_args.width, "Slit width [nm]");
  orc->add_option("--sigma-nm", oracle_args.sigma, "Sigma override [nm]");
  orc->add_option("--half-range-nm", oracle_args.half_range, "Integration half-range");
  orc->add_option("--points", oracle_args.points, "Starting node count");
  orc->add_option("--scheme", oracle_args.scheme, "trapezoid|gauss");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      if (run->count("--lambda-nm")) run_args.overrides.wavelength = lambda_nm;
      if (run->count("--slits")) run_args.overrides.slit_count = slits;
      if (run->count("--pitch-nm")) run_args.overrides.slit_pitch = pitch_nm;
      if (run->count("--width-nm")) run_args.overrides.slit_width = width_nm;
      if (run->count("--sigma-nm")) run_args.overrides.sigma = sigma_nm;
      if (run->count("--grid-nx")) run_args.overrides.grid_nx = grid_nx;
      if (run->count("--grid-nz")) run_args.overrides.grid_nz = grid_nz;
      if (run->count("--zmax-talbots")) run_args.overrides.zmax_talbots = zmax_t;
      if (run->count("--per-slit")) run_args.overrides.per_slit = per_slit;
      return do_run(run_args);
    }
    return do_oracle(oracle_args);
  } catch (const slitwave::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const slitwave::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
