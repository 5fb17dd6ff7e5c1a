#pragma once

#include "robusthalf/ellipsoid.hpp"
#include "robusthalf/perturbation.hpp"
#include "robusthalf/types.hpp"

namespace robusthalf {

/// Either the halfspace is robust on U(x), or a concrete perturbation z in
/// U(x) with y (<w, z> + bias) <= 0. Counterexamples are re-verified on
/// construction (membership + sign); a violation is an internal error.
struct CertResult {
  bool robust = true;
  Vector counterexample;  // valid iff !robust
  long oracle_calls = 0;
  long iterations = 0;
};

/// Robust certification by running the ellipsoid method on the convex
/// intersection U(x) cap {z : y(<w,z> + bias) <= 0}, with the adversary's
/// separation oracle composed with the halfspace cut y*w. "Robust" means
/// the intersection holds no ball of radius 2^-b R. To dodge exact
/// tangency, deepened level sets {y(<w,z> + bias) <= -rho} are tried with
/// shrinking rho (tolerance * ||w|| * R * 2^-j, then 0); the first
/// nonempty level supplies the counterexample.
CertResult cert(const PerturbationSet& adv, const Halfspace& h, const LabeledExample& ex,
                const FeasibilityConfig& cfg);

/// Closed-form certification for an lp-ball adversary and a homogeneous
/// halfspace: the worst perturbation is x - y * gamma * (dual maximizer of w).
CertResult cert_fastpath(const Halfspace& h, const LabeledExample& ex, double gamma,
                         const NormSpec& spec);

/// Certification dispatch: exact linear minimization when the adversary
/// supports it (lp balls, finite hulls), the ellipsoid composition
/// otherwise. force_oracle routes everything through cert().
CertResult certify_example(const PerturbationSet& adv, const Halfspace& h,
                           const LabeledExample& ex, const FeasibilityConfig& cfg,
                           bool force_oracle = false);

}  // namespace robusthalf
