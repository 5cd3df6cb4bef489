#pragma once

#include <Eigen/Core>
#include <vector>

#include "slitwave/errors.hpp"

namespace slitwave {

/// 1-D density cross-section at fixed z, max-normalized to 1.
struct FringeProfile {
  double z = 0.0;
  Eigen::ArrayXd xs;      // strictly increasing
  Eigen::ArrayXd values;  // in [0,1]
};

enum class ExtremumKind { principal, subsidiary };

struct Extremum {
  double x = 0.0;
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::subsidiary;
};

/// Discrete interior local maxima of a profile, classified principal when
/// the peak reaches at least half of the profile's global maximum. A run
/// of equal samples higher than both flanks counts as one maximum at the
/// run midpoint (symmetric peaks straddling two samples are common on
/// even-sized grids).
inline std::vector<Extremum> locate_maxima(const FringeProfile& profile) {
  const auto n = profile.values.size();
  if (n < 3) throw EmptyProfile("locate_maxima: need at least 3 samples");
  const double global_max = profile.values.maxCoeff();
  std::vector<Extremum> out;
  for (Eigen::Index i = 1; i + 1 < n;) {
    const double v = profile.values[i];
    if (!(v > profile.values[i - 1])) {
      ++i;
      continue;
    }
    Eigen::Index j = i;
    while (j + 1 < n && profile.values[j + 1] == v) ++j;
    if (j + 1 < n && profile.values[j + 1] < v) {
      Extremum e;
      e.x = 0.5 * (profile.xs[i] + profile.xs[j]);
      e.value = v;
      e.kind = (v >= 0.5 * global_max) ? ExtremumKind::principal
                                       : ExtremumKind::subsidiary;
      out.push_back(e);
    }
    i = j + 1;
  }
  return out;
}

}  // namespace slitwave
