#pragma once

// Shared helpers for the steerkit test suites.

#include <cmath>
#include <random>

#include "steerkit/steerkit.hpp"

namespace steerkit_test {

// Draws a valid five-parameter X-state with |t_x| = |t_y|. The diagonal is
// drawn first; the off-diagonal magnitude is then scaled into the positivity
// bound ((t_x -+ t_y)^2 <= d1 d4 resp. d2 d3 in quarter units), staying
// strictly inside so eigenvalue checks never sit on the boundary.
inline steerkit::XStateParams random_x_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double a = 0.95 * sym(rng);
    const double b = 0.95 * sym(rng);
    const double tz = 0.95 * sym(rng);
    const double d1 = 1 + a + b + tz;
    const double d2 = 1 + a - b - tz;
    const double d3 = 1 - a + b - tz;
    const double d4 = 1 - a - b + tz;
    if (d1 <= 0 || d2 <= 0 || d3 <= 0 || d4 <= 0) continue;
    const bool anti = unit(rng) < 0.5;  // t_y = -t_x or t_y = +t_x
    const double bound =
        0.5 * std::sqrt(anti ? d1 * d4 : d2 * d3);
    const double t = 0.98 * bound * sym(rng);
    steerkit::XStateParams x;
    x.a = a;
    x.b = b;
    x.t_x = t;
    x.t_y = anti ? -t : t;
    x.t_z = tz;
    return x;
  }
}

inline double max_abs_diff(const steerkit::ComplexMatrix& m,
                           const steerkit::ComplexMatrix& n) {
  return (m - n).cwiseAbs().maxCoeff();
}

}  // namespace steerkit_test
