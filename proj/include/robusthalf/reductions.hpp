#pragma once

#include "robusthalf/ellipsoid.hpp"
#include "robusthalf/norms.hpp"

#include <functional>

namespace robusthalf {

/// EVAL((w, b0), (x, y)): the robust 0-1 loss sup_{z in U(x)} 1{y(<w,z>+b0) <= 0}.
/// Raw (w, b0) signature so the zero weight vector is queryable.
using RobustLossEvaluator =
    std::function<int(const Vector& w, double b0, const Vector& x, int y)>;

/// Closed-form evaluator for the lp-ball adversary of radius gamma.
RobustLossEvaluator make_lp_ball_evaluator(double gamma, NormSpec spec);

/// Answer of an approximate separation oracle: the query is within gamma of
/// the body, or a hyperplane c with <c, z'> <= <c, z> + slack over the body.
struct ApproxSepResult {
  bool near_inside = true;
  Vector hyperplane;     // valid iff !near_inside
  long eval_calls = 0;   // query budget actually spent
  long iterations = 0;

  static ApproxSepResult inside(long evals, long iters);
  static ApproxSepResult cut(Vector c, long evals, long iters);
};

using MembershipFn = std::function<bool(const Vector&)>;

/// Approximate separation for a convex body given only membership access:
/// bisect from a known interior point to the boundary, then estimate the
/// supporting hyperplane from boundary points recovered along nearby
/// directions (least-squares normal). Exact for smooth bodies and polytope
/// facets; degrades near edges thinner than eta (the documented fidelity
/// gap of this conversion).
///
/// interior must be a member with B(interior, inner_radius) inside the
/// body, and the body must lie in B(0, outer_radius).
ApproxSepResult mem_to_approx_sep(const MembershipFn& mem, const Vector& interior,
                                  double inner_radius, double outer_radius, const Vector& query,
                                  double eta);

struct ReductionConfig {
  int precision_bits = 16;
};

/// gamma-approximate separation oracle for U(x) built from a robust-loss
/// evaluator: searches the dual body K of positively-labeling halfspaces
/// (w, b0), restricted by the query cut <(z,1), .> <= -gamma/2 and the unit
/// ball, with membership MEM_K = 1 - EVAL. A found (w, b0) labels all of
/// U(x) positive and z negative by at least gamma/2, so -w separates with
/// slack at most gamma/2; if the restricted body is empty, z is within
/// gamma of U(x).
ApproxSepResult approx_sep_from_eval(const RobustLossEvaluator& eval, const Vector& x,
                                     const Vector& z, double gamma, double R,
                                     const ReductionConfig& cfg = {});

}  // namespace robusthalf
