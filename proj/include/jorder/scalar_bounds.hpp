#pragma once

#include "jorder/types.hpp"

namespace jorder {

/// Parameters of the scalar bound
///   lambda^2/(2t) + t/2 - sqrt(2 t lambda - t^2) <= (d/2) (t - lambda)^2
/// on the box [c + eps, 2c]^2, with 0 < eps < c and d > 0.
struct ScalarBoundParams {
  double c = 0.0;
  double eps = 0.0;
  double d = 0.0;
};

/// gap(t, lambda) = lambda^2/(2t) + t/2 - sqrt(2 t lambda - t^2).
/// Requires 2 t lambda - t^2 > 0; nonnegative on the box.
double gap(double t, double lambda);

/// k(t, lambda) = (d/2)(t - lambda)^2 - gap(t, lambda), restricted to the box.
double k_function(double t, double lambda, const ScalarBoundParams& params);

/// gap / (t - lambda)^2 with a second-order Taylor guard near the diagonal
/// (the only zero), where the raw ratio is 0/0 noise. The diagonal limit is
/// 1/lambda.
double gap_ratio(double t, double lambda);

/// Lower bound 2 (c + eps) eps for 2 t lambda - t^2 on the box.
double positivity_floor(double c, double eps);

/// Smallest d (bisection to 1e-4 relative) with k >= -1e-12 on a
/// grid_points^2 lattice over the box, inflated by 10% as off-lattice margin
/// and re-verified on a 4x finer lattice (re-inflating on failure).
ScalarBoundParams find_d(double c, double eps, int grid_points = 257);

}  // namespace jorder
