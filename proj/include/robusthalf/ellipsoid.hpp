#pragma once

#include "robusthalf/perturbation.hpp"

#include <functional>
#include <vector>

namespace robusthalf {

/// Localization ellipsoid {v : (v - center)^T shape^{-1} (v - center) <= 1}.
struct EllipsoidState {
  Vector center;
  Matrix shape;  // symmetric positive definite
};

struct FeasibilityConfig {
  double initial_radius = 1.0;  // K is assumed to lie in B(0, initial_radius)
  int precision_bits = 16;      // b: iteration budget and the Empty resolution
  double tolerance = 1e-6;      // oracle slack knob (certification levels)
  bool track_volume = false;    // record per-step det(shape) ratios

  long max_iterations(Eigen::Index dim) const;
};

struct FeasibilityResult {
  bool found = false;
  Vector point;  // asserted Inside by the oracle when found
  long iterations = 0;
  long oracle_calls = 0;
  std::vector<double> det_ratios;  // per-step det(A')/det(A), if tracked

  /// Empty means: no ball of radius 2^-b * initial_radius fits in K
  /// (under the oracle contract and exact arithmetic).
  bool empty() const { return !found; }
};

using OracleFn = std::function<SeparationResult(const Vector&)>;

/// Ellipsoid method for convex feasibility driven by a separation oracle.
/// Central cuts only; d = 1 falls back to bisection. The shape matrix is
/// re-symmetrized after every update and eigen-directions below
/// 1e-14 * trace are floored by a diagonal jitter.
FeasibilityResult find_feasible(const OracleFn& oracle, Eigen::Index dim,
                                const FeasibilityConfig& cfg);

}  // namespace robusthalf
