#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "slitwave/params.hpp"
#include "slitwave/wavefield.hpp"

namespace slitwave::oracle {

enum class Scheme { trapezoid, gauss_legendre };

/// Gaussian slit transmission G(xi) = exp(-xi^2 / (2 b^2)).
inline double gaussian_form_factor(double xi, double b) {
  return std::exp(-xi * xi / (2.0 * b * b));
}

struct QuadratureSpec {
  double half_range = 0.0;  // integration span around the slit center [nm]
  int n_points = 4096;      // starting node count for the doubling loop
  Scheme scheme = Scheme::gauss_legendre;
};

/// Single-pass quadrature of a complex integrand over [a, b]. trapezoid
/// uses uniform nodes; gauss_legendre uses fixed 16-point panels (n is
/// rounded up to a whole number of panels).
Complex integrate_complex(const std::function<Complex(double)>& f, double a,
                          double b, Scheme scheme, int n_points);

/// Doubles n_points until successive results agree to rel_tol. Throws
/// QuadratureUnconverged past max_doublings.
Complex integrate_to_convergence(const std::function<Complex(double)>& f,
                                 double a, double b, Scheme scheme,
                                 int n_points, double rel_tol = 1e-6,
                                 int max_doublings = 10);

/// Brute-force path-integral transmission through one Gaussian slit:
/// (e^{-i pi/4}/sqrt(lambda z)) * Integral exp{i pi (x1-x0-xi)^2/(lambda z)}
/// * exp{-xi^2/(2 b^2)} dxi with b = sigma*sqrt(2), source at infinity.
/// Equals the closed-form packet up to one global complex constant; used
/// as the independent validator of the closed form.
Complex convolve_kernel(const ScenarioParams& p, const QuadratureSpec& spec,
                        double x1, double z, int slit_index = 0);

/// Central-difference (psi(x+h)-psi(x-h)) / (2h psi(x)) on the superposed
/// field; finite-difference oracle for gradient_log.
Complex fd_gradient(const ScenarioParams& p, double x, double z, double h);

/// Legendre-Gauss nodes and weights on [-1, 1] (Newton on the recurrence).
void gauss_legendre_nodes(int order, std::vector<double>& nodes,
                          std::vector<double>& weights);

}  // namespace slitwave::oracle
