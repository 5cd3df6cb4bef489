#include "slitwave/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace slitwave {

void derive_scenario(Scenario& s) {
  validate(s.params);
  const double z_talbot = talbot_length(s.params);
  const double z_max = s.knobs.zmax_talbots * z_talbot;
  if (!(z_max > 0.0)) throw ConfigError("scenario: zmax_talbots must be > 0");

  const double half_span =
      s.knobs.x_half_span.value_or(0.5 * s.params.slit_count * s.params.slit_pitch);
  s.grid.x_min = -half_span;
  s.grid.x_max = half_span;
  s.grid.nx = s.knobs.grid_nx;
  s.grid.nz = s.knobs.grid_nz;
  s.grid.z_min = z_max / s.knobs.grid_nz;  // first plane above z = 0
  s.grid.z_max = z_max;
  validate(s.grid);

  const double traj_z_max = s.knobs.traj_zmax_talbots.value_or(s.knobs.zmax_talbots) * z_talbot;
  s.plan.per_slit = s.knobs.per_slit;
  s.plan.half_span_sigmas = s.knobs.half_span_sigmas;
  s.plan.z_start = 0.0;
  s.plan.z_end = traj_z_max;

  // dz_max keeps the recorded polylines dense enough to draw the
  // undulations even where the error control would allow huge steps
  const double range = s.plan.z_end - s.plan.z_start;
  s.integrator.dz_init = range / 2000.0;
  s.integrator.dz_min = range * 1e-9;
  s.integrator.dz_max = range / 200.0;
  s.integrator.rel_tol = s.knobs.rel_tol;
  s.integrator.node_eps = kNodeEpsilon;
  validate(s.integrator);

  if (s.knobs.fringe_planes_nm) {
    s.fringe_planes = *s.knobs.fringe_planes_nm;
    for (double z : s.fringe_planes)
      if (!(z > 0.0 && z <= z_max))
        throw ConfigError("scenario: fringe plane outside grid z range");
  } else {
    // Preset planes are fractions of z_T; silently drop the ones a
    // --zmax-talbots override pushed out of range.
    s.fringe_planes.clear();
    for (double f : s.knobs.fringe_talbots)
      if (f > 0.0 && f <= s.knobs.zmax_talbots)
        s.fringe_planes.push_back(f * z_talbot);
  }
}

bool is_preset_name(const std::string& name) {
  return name == "neutron7" || name == "talbot512" || name == "grating64" ||
         name == "fullerene9";
}

Scenario preset(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "neutron7") {
    // Thermal neutrons, lambda = 0.5 nm, d = 10 lambda, a = 2 lambda.
    s.params = make_params(0.5, 7, 5.0, 1.0);
    s.knobs.per_slit = 14;
    s.knobs.half_span_sigmas = 2.0;
  } else if (name == "talbot512") {
    // Talbot carpet: d = 50 lambda; slit width keeps the 1:5 duty of the
    // neutron grating.
    s.params = make_params(0.5, 512, 25.0, 5.0);
    s.knobs.per_slit = 1;
    s.knobs.traj_zmax_talbots = 1.0;
  } else if (name == "grating64") {
    // Near-fractal regime lambda/d = 1e-3; node aborts are expected and
    // reported rather than smoothed over.
    s.params = make_params(0.5, 64, 500.0, 100.0);
    s.knobs.per_slit = 2;
    s.knobs.half_span_sigmas = 1.0;
    s.knobs.traj_zmax_talbots = 1.0;
    s.knobs.rel_tol = 1e-6;
  } else if (name == "fullerene9") {
    // C60 beam on the second grating: d = 250 nm, a = 150 nm, lambda = 5 pm.
    s.params = make_params(0.005, 9, 250.0, 150.0);
    s.knobs.per_slit = 14;
    s.knobs.half_span_sigmas = 2.0;
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  derive_scenario(s);
  return s;
}

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for " + key + ": '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw ConfigError("config: expected integer for " + key);
  return i;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
  if (out.empty()) throw ConfigError("config: empty list for " + key);
  return out;
}

}  // namespace

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);

  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key=value at " + path + ":" +
                        std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: empty key or value at " + path + ":" +
                        std::to_string(line_no));
    if (!kv.emplace(key, value).second)
      throw ConfigError("config: duplicate key " + key);
  }

  Scenario s;
  s.name = "custom";
  double wavelength = 0.0, pitch = 0.0, width = 0.0, sigma = 0.0;
  int slits = 0;
  for (const auto& [key, value] : kv) {
    if (key == "name") s.name = value;
    else if (key == "wavelength") wavelength = parse_double(key, value);
    else if (key == "slit_count") slits = parse_int(key, value);
    else if (key == "slit_pitch") pitch = parse_double(key, value);
    else if (key == "slit_width") width = parse_double(key, value);
    else if (key == "sigma") sigma = parse_double(key, value);
    else if (key == "grid_nx") s.knobs.grid_nx = parse_int(key, value);
    else if (key == "grid_nz") s.knobs.grid_nz = parse_int(key, value);
    else if (key == "x_half_span") s.knobs.x_half_span = parse_double(key, value);
    else if (key == "zmax_talbots") s.knobs.zmax_talbots = parse_double(key, value);
    else if (key == "per_slit") s.knobs.per_slit = parse_int(key, value);
    else if (key == "half_span_sigmas") s.knobs.half_span_sigmas = parse_double(key, value);
    else if (key == "traj_zmax_talbots") s.knobs.traj_zmax_talbots = parse_double(key, value);
    else if (key == "fringe_planes") s.knobs.fringe_planes_nm = parse_list(key, value);
    else if (key == "rel_tol") s.knobs.rel_tol = parse_double(key, value);
    else if (key == "pgm_mapping") {
      if (value == "linear") s.pgm_mapping = PgmMapping::linear;
      else if (value == "log") s.pgm_mapping = PgmMapping::log;
      else throw ConfigError("config: pgm_mapping must be linear or log");
    } else if (key == "pgm_gamma") s.pgm_gamma = parse_double(key, value);
    else throw ConfigError("config: unknown key " + key);
  }
  s.params = make_params(wavelength, slits, pitch, width, sigma);
  derive_scenario(s);
  return s;
}

void apply_overrides(Scenario& s, const Overrides& o) {
  const bool sigma_was_default =
      s.params.sigma == default_sigma(s.params.slit_width);
  if (o.wavelength) s.params.wavelength = *o.wavelength;
  if (o.slit_count) s.params.slit_count = *o.slit_count;
  if (o.slit_pitch) s.params.slit_pitch = *o.slit_pitch;
  if (o.slit_width) {
    s.params.slit_width = *o.slit_width;
    if (sigma_was_default && !o.sigma)
      s.params.sigma = default_sigma(*o.slit_width);
  }
  if (o.sigma) s.params.sigma = *o.sigma;
  if (o.grid_nx) s.knobs.grid_nx = *o.grid_nx;
  if (o.grid_nz) s.knobs.grid_nz = *o.grid_nz;
  if (o.zmax_talbots) {
    s.knobs.zmax_talbots = *o.zmax_talbots;
    s.knobs.fringe_planes_nm.reset();  // keep planes inside the new range
  }
  if (o.per_slit) s.knobs.per_slit = *o.per_slit;
  if (o.wavelength || o.slit_count || o.slit_pitch || o.slit_width)
    s.knobs.x_half_span.reset();
  derive_scenario(s);
}

}  // namespace slitwave
