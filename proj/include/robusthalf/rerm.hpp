#pragma once

#include "robusthalf/certify.hpp"
#include "robusthalf/losses.hpp"

#include <optional>

namespace robusthalf {

struct RermStats {
  long outer_iterations = 0;
  long cert_calls = 0;
  long oracle_calls = 0;  // separation-oracle queries issued by inner certs
  double wall_seconds = 0.0;
};

/// Outcome of robust empirical risk minimization. A separator has zero
/// empirical robust risk, re-verified point by point before returning.
/// Infeasible means the margin-tau relaxation of the solution set holds no
/// ball of radius 2^-b inside the unit ball of candidate weights.
struct RermResult {
  std::optional<Halfspace> separator;
  RermStats stats;
  bool low_margin_caveat = false;  // Infeasible occurred at margins below 10*tau

  bool feasible() const { return separator.has_value(); }
};

struct RermConfig {
  int precision_bits = 16;
  double tau = 0.0;          // margin relaxation; 0 = 2^-b * data scale
  bool with_bias = false;    // lift to (w, b) via the constant-coordinate trick
  bool force_oracle = false; // route inner certification through the ellipsoid
};

/// Exact RERM in the realizable setting: ellipsoid search over candidate
/// weights in the unit l2 ball, with per-example certification as the
/// separation oracle. The first counterexample z_i (dataset order) yields
/// the cut -y_i z_i.
RermResult rerm(const Dataset& S, const PerturbationSet& adv, const RermConfig& cfg = {});

/// RERM over the induced halfspaces of a feature map, represented by a
/// sampled image-hull adversary. The returned separator lives in image
/// space; training anchors stay in base space.
RermResult rerm_feature_mapped(const Dataset& S, const AffineImageHull& adv,
                               const RermConfig& cfg = {});

}  // namespace robusthalf
