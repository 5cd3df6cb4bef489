#include "slitwave/oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "slitwave/compensated.hpp"

namespace slitwave::oracle {

namespace {

constexpr int kPanelOrder = 16;

const std::vector<double>& panel_nodes() {
  static const std::vector<double> nodes = [] {
    std::vector<double> n, w;
    gauss_legendre_nodes(kPanelOrder, n, w);
    return n;
  }();
  return nodes;
}

const std::vector<double>& panel_weights() {
  static const std::vector<double> weights = [] {
    std::vector<double> n, w;
    gauss_legendre_nodes(kPanelOrder, n, w);
    return w;
  }();
  return weights;
}

}  // namespace

void gauss_legendre_nodes(int order, std::vector<double>& nodes,
                          std::vector<double>& weights) {
  if (order < 1) throw ConfigError("gauss_legendre_nodes: order must be >= 1");
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double deriv = 0.0;
    for (int iter = 0; iter < 64; ++iter) {
      double p_prev = 1.0;
      double p_curr = x;
      for (int k = 2; k <= order; ++k) {
        const double p_next = ((2.0 * k - 1.0) * x * p_curr - (k - 1.0) * p_prev) / k;
        p_prev = p_curr;
        p_curr = p_next;
      }
      deriv = order * (x * p_curr - p_prev) / (x * x - 1.0);
      const double dx = p_curr / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) nodes[order / 2] = 0.0;
}

Complex integrate_complex(const std::function<Complex(double)>& f, double a,
                          double b, Scheme scheme, int n_points) {
  if (!(b > a)) throw ConfigError("integrate_complex: need b > a");
  if (n_points < 2) throw ConfigError("integrate_complex: need n_points >= 2");
  CompensatedSum<Complex> acc;
  if (scheme == Scheme::trapezoid) {
    const double h = (b - a) / (n_points - 1);
    acc.add(0.5 * f(a));
    for (int i = 1; i + 1 < n_points; ++i) acc.add(f(a + i * h));
    acc.add(0.5 * f(b));
    return acc.value() * h;
  }
  const int panels = (n_points + kPanelOrder - 1) / kPanelOrder;
  const double width = (b - a) / panels;
  const auto& nodes = panel_nodes();
  const auto& weights = panel_weights();
  for (int panel = 0; panel < panels; ++panel) {
    const double lo = a + panel * width;
    const double mid = lo + 0.5 * width;
    for (int i = 0; i < kPanelOrder; ++i)
      acc.add(weights[i] * f(mid + 0.5 * width * nodes[i]));
  }
  return acc.value() * (0.5 * width);
}

Complex integrate_to_convergence(const std::function<Complex(double)>& f,
                                 double a, double b, Scheme scheme,
                                 int n_points, double rel_tol,
                                 int max_doublings) {
  Complex prev = integrate_complex(f, a, b, scheme, n_points);
  int n = n_points;
  for (int round = 0; round < max_doublings; ++round) {
    n *= 2;
    const Complex curr = integrate_complex(f, a, b, scheme, n);
    const double denom = std::max(std::abs(curr), 1e-300);
    if (std::abs(curr - prev) / denom <= rel_tol) return curr;
    prev = curr;
  }
  throw QuadratureUnconverged(
      "integrate_to_convergence: result still moving after doubling limit");
}

Complex convolve_kernel(const ScenarioParams& p, const QuadratureSpec& spec,
                        double x1, double z, int slit_index) {
  validate(p);
  if (!(z > 0.0)) throw ConfigError("convolve_kernel: need z > 0");
  if (slit_index < 0 || slit_index >= p.slit_count)
    throw ConfigError("convolve_kernel: slit_index out of range");
  const double b = p.sigma * std::sqrt(2.0);
  if (spec.half_range < 6.0 * b * (1.0 - 1e-12))
    throw ConfigError("convolve_kernel: half_range must cover 6 form-factor widths");
  if (spec.n_points < 1000)
    throw ConfigError("convolve_kernel: need n_points >= 1000 for the oscillatory integrand");

  const double u = x1 - slit_center(p, slit_index);
  const double fresnel = std::numbers::pi / (p.wavelength * z);
  auto integrand = [&](double xi) {
    const double surplus = u - xi;
    const double phase = fresnel * surplus * surplus;
    return gaussian_form_factor(xi, b) * Complex(std::cos(phase), std::sin(phase));
  };
  const Complex value = integrate_to_convergence(
      integrand, -spec.half_range, spec.half_range, spec.scheme, spec.n_points);
  // 1/sqrt(i lambda z) is the distance-dependent part of the free
  // propagator prefactor; with it the result matches the closed-form
  // packet up to a z-independent constant.
  const Complex prefactor =
      std::polar(1.0 / std::sqrt(p.wavelength * z), -std::numbers::pi / 4.0);
  return prefactor * value;
}

Complex fd_gradient(const ScenarioParams& p, double x, double z, double h) {
  if (!(h > 0.0)) throw ConfigError("fd_gradient: need h > 0");
  if (density(p, x, z) < kNodeEpsilon)
    throw NodeSingularity("fd_gradient: wave-function node at requested point");
  const Complex mid = superpose(p, x, z);
  const Complex hi = superpose(p, x + h, z);
  const Complex lo = superpose(p, x - h, z);
  return (hi - lo) / (2.0 * h * mid);
}

}  // namespace slitwave::oracle
