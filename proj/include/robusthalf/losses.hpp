#pragma once

#include "robusthalf/certify.hpp"
#include "robusthalf/types.hpp"

namespace robusthalf {

/// 1 iff y <w, x> / ||w||_q <= gamma (homogeneous halfspaces; ties count).
int margin_loss(const Halfspace& h, const LabeledExample& ex, double gamma, const NormSpec& spec);

/// Exact robust 0-1 loss against the lp-ball adversary of radius gamma,
/// in closed form via the dual norm. Equals margin_loss.
int robust_loss_lp(const Halfspace& h, const LabeledExample& ex, double gamma,
                   const NormSpec& spec);

/// Mean robust loss over the dataset for an lp-ball adversary (closed form).
double empirical_robust_risk(const Halfspace& h, const Dataset& S, double gamma,
                             const NormSpec& spec);

/// Mean robust loss over the dataset for a general oracle adversary; exact
/// linear minimization when available, certification otherwise.
double empirical_robust_risk(const Halfspace& h, const Dataset& S, const PerturbationSet& adv,
                             const FeasibilityConfig& cfg);

/// Fraction of examples with margin at most `threshold`. When normalized,
/// the margin is y <w, x> / ||w||_q; otherwise the raw y <w, x> is used
/// (the natural reading for unit-dual-norm-bounded models).
double margin_error(const Halfspace& h, const Dataset& S, double threshold, const NormSpec& spec,
                    bool normalized = true);

/// Plain 0-1 error, ties counted as errors.
double clean_error(const Halfspace& h, const Dataset& S);

}  // namespace robusthalf
