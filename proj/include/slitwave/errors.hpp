#pragma once

#include <stdexcept>
#include <string>

namespace slitwave {

/// Velocity field is undefined: |psi|^2 fell below the node threshold.
struct NodeSingularity : std::runtime_error {
  explicit NodeSingularity(const std::string& what) : std::runtime_error(what) {}
};

/// Doubling the node count still changes the quadrature beyond tolerance.
struct QuadratureUnconverged : std::runtime_error {
  explicit QuadratureUnconverged(const std::string& what) : std::runtime_error(what) {}
};

/// Profile too short to contain interior extrema.
struct EmptyProfile : std::runtime_error {
  explicit EmptyProfile(const std::string& what) : std::runtime_error(what) {}
};

/// Requested cross-section plane lies outside the simulated z range.
struct PlaneOutOfRange : std::runtime_error {
  explicit PlaneOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid scenario parameters, integrator configuration, or config file.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Failed file write/read.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slitwave
