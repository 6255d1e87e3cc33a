#include "jorder/scalar_bounds.hpp"

#include <cmath>
#include <string>

namespace jorder {

namespace {

constexpr double kLatticeSlack = 1e-12;

void require_box(double t, double lambda, double c, double eps) {
  const double lo = c + eps;
  const double hi = 2.0 * c;
  if (t < lo || t > hi || lambda < lo || lambda > hi) {
    throw DomainError("k_function: (t, lambda) outside [c+eps, 2c]^2");
  }
}

void require_params(double c, double eps) {
  if (!(c > 0.0) || !(eps > 0.0) || !(eps < c)) {
    throw InvalidIntervalError("require 0 < eps < c");
  }
}

bool lattice_feasible(double c, double eps, double d, int points) {
  const double lo = c + eps;
  const double step = (2.0 * c - lo) / (points - 1);
  const ScalarBoundParams params{c, eps, d};
  for (int i = 0; i < points; ++i) {
    const double t = lo + i * step;
    for (int j = 0; j < points; ++j) {
      const double lambda = lo + j * step;
      if (k_function(t, lambda, params) < -kLatticeSlack) return false;
    }
  }
  return true;
}

}  // namespace

double gap(double t, double lambda) {
  const double radicand = 2.0 * t * lambda - t * t;
  if (!(radicand > 0.0)) {
    throw DomainError("gap: 2 t lambda - t^2 must be positive, got " +
                      std::to_string(radicand));
  }
  return lambda * lambda / (2.0 * t) + 0.5 * t - std::sqrt(radicand);
}

double k_function(double t, double lambda, const ScalarBoundParams& params) {
  require_params(params.c, params.eps);
  require_box(t, lambda, params.c, params.eps);
  const double diff = t - lambda;
  return 0.5 * params.d * diff * diff - gap(t, lambda);
}

double gap_ratio(double t, double lambda) {
  const double diff = t - lambda;
  if (std::abs(diff) < 1e-6) {
    // Second-order Taylor limit of gap/(t-lambda)^2 on the diagonal.
    return 1.0 / lambda;
  }
  return gap(t, lambda) / (diff * diff);
}

double positivity_floor(double c, double eps) {
  require_params(c, eps);
  return 2.0 * (c + eps) * eps;
}

ScalarBoundParams find_d(double c, double eps, int grid_points) {
  require_params(c, eps);
  if (grid_points < 64) throw InvalidConfigError("find_d: grid_points >= 64");

  // Bracket: grow until feasible.
  double hi = 1.0;
  int guard = 0;
  while (!lattice_feasible(c, eps, hi, grid_points)) {
    hi *= 2.0;
    if (++guard > 200) throw Error("find_d: no feasible d found");
  }
  double lo = 0.0;
  while (hi - lo > 1e-4 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (lattice_feasible(c, eps, mid, grid_points)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  // 10% off-lattice margin, then verify on a 4x finer lattice and keep
  // inflating while that fails.
  double d = 1.1 * hi;
  const int fine_points = 4 * (grid_points - 1) + 1;
  guard = 0;
  while (!lattice_feasible(c, eps, d, fine_points)) {
    d *= 1.1;
    if (++guard > 200) throw Error("find_d: fine-lattice verification failed");
  }
  return {c, eps, d};
}

}  // namespace jorder
