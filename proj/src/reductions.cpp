#include "robusthalf/reductions.hpp"

#include <cmath>

namespace robusthalf {

ApproxSepResult ApproxSepResult::inside(long evals, long iters) {
  ApproxSepResult r;
  r.near_inside = true;
  r.eval_calls = evals;
  r.iterations = iters;
  return r;
}

ApproxSepResult ApproxSepResult::cut(Vector c, long evals, long iters) {
  require_finite(c, "ApproxSepResult.hyperplane");
  if (c.isZero(0.0)) throw ProtocolError("approximate separation produced a zero hyperplane");
  ApproxSepResult r;
  r.near_inside = false;
  r.hyperplane = std::move(c);
  r.eval_calls = evals;
  r.iterations = iters;
  return r;
}

RobustLossEvaluator make_lp_ball_evaluator(double gamma, NormSpec spec) {
  if (!(gamma > 0.0)) throw InvalidInput("make_lp_ball_evaluator: gamma must be positive");
  return [gamma, spec](const Vector& w, double b0, const Vector& x, int y) -> int {
    require_same_dim(w, x, "lp_ball_evaluator");
    double worst =
        static_cast<double>(y) * (w.dot(x) + b0) - gamma * lp_norm(w, spec.q());
    return worst <= 0.0 ? 1 : 0;
  };
}

namespace {

/// Boundary point on the segment [inside_pt, outside_pt], within tol.
Vector bisect_boundary(const MembershipFn& mem, Vector inside_pt, Vector outside_pt, double tol,
                       long& evals, const Vector& interior) {
  while ((outside_pt - inside_pt).norm() > tol) {
    Vector mid = 0.5 * (inside_pt + outside_pt);
    ++evals;
    if (mem(mid))
      inside_pt = std::move(mid);
    else
      outside_pt = std::move(mid);
  }
  // convexity probe: the segment between two members stays inside
  ++evals;
  if (!mem(0.5 * (interior + inside_pt)))
    throw ProtocolError("membership oracle violated convexity between two members");
  return 0.5 * (inside_pt + outside_pt);
}

}  // namespace

ApproxSepResult mem_to_approx_sep(const MembershipFn& mem, const Vector& interior,
                                  double inner_radius, double outer_radius, const Vector& query,
                                  double eta) {
  require_finite(interior, "mem_to_approx_sep interior");
  require_finite(query, "mem_to_approx_sep query");
  require_same_dim(interior, query, "mem_to_approx_sep");
  if (!(eta > 0.0)) throw InvalidInput("mem_to_approx_sep: eta must be positive");
  if (!(inner_radius > 0.0) || !(outer_radius > 0.0))
    throw InvalidInput("mem_to_approx_sep: radius bounds must be positive");

  long evals = 0;
  ++evals;
  if (!mem(interior))
    throw ProtocolError("membership oracle rejected the declared interior point");
  ++evals;
  if (mem(query)) return ApproxSepResult::inside(evals, 0);

  const Eigen::Index dim = query.size();
  const double probe = eta / 4.0;
  const double bisect_tol = eta / 8.0;
  const double far = 2.0 * outer_radius + interior.norm() + 1.0;  // outside for sure

  // primary boundary point toward the query
  Vector u = bisect_boundary(mem, interior, query, bisect_tol, evals, interior);

  // boundary points along slightly tilted rays; tangent frame from the
  // Householder QR of the outward direction
  Vector v0 = (query - interior).normalized();
  Matrix basis = Eigen::HouseholderQR<Matrix>(v0).householderQ();
  std::vector<Vector> boundary{u};
  const double reach = (u - interior).norm();
  for (Eigen::Index j = 1; j < dim; ++j) {
    for (double sgn : {1.0, -1.0}) {
      Vector dir = (reach * v0 + sgn * probe * basis.col(j)).normalized();
      Vector outside_pt = interior + far * dir;
      ++evals;
      if (mem(outside_pt))
        throw ProtocolError("membership oracle accepted a point outside the outer radius bound");
      boundary.push_back(bisect_boundary(mem, interior, outside_pt, bisect_tol, evals, interior));
    }
  }

  // total-least-squares normal of the boundary patch
  Matrix P(static_cast<Eigen::Index>(boundary.size()), dim);
  for (size_t i = 0; i < boundary.size(); ++i) P.row(static_cast<Eigen::Index>(i)) = boundary[i];
  Vector mean = P.colwise().mean();
  P.rowwise() -= mean.transpose();
  Eigen::JacobiSVD<Matrix> svd(P, Eigen::ComputeFullV);
  Vector n = svd.matrixV().col(dim - 1);
  if (n.isZero(0.0) || !n.allFinite()) n = v0;
  if (n.dot(query - mean) < 0.0) n = -n;  // orient: query on the high side
  return ApproxSepResult::cut(std::move(n), evals, 0);
}

ApproxSepResult approx_sep_from_eval(const RobustLossEvaluator& eval, const Vector& x,
                                     const Vector& z, double gamma, double R,
                                     const ReductionConfig& cfg) {
  require_finite(x, "approx_sep_from_eval x");
  require_finite(z, "approx_sep_from_eval z");
  require_same_dim(x, z, "approx_sep_from_eval");
  if (!(gamma > 0.0)) throw InvalidInput("approx_sep_from_eval: gamma must be positive");
  if (!(R > 0.0)) throw InvalidInput("approx_sep_from_eval: R must be positive");

  const Eigen::Index d = x.size();
  const Eigen::Index D = d + 1;  // (w, b0) space
  long evals = 0;

  // K = {(w, b0) : all of U(x) labeled +1}, intersected with the unit ball
  // since positive scalings stay in K
  auto mem_K = [&](const Vector& wb) -> bool {
    if (wb.norm() > 1.0) return false;
    ++evals;
    return eval(wb.head(d), wb[d], x, +1) == 0;
  };

  // analytic interior: w = 0, b0 = 1/2 labels everything +1 on any bounded
  // body; one EVAL call verifies the evaluator agrees
  Vector interior = Vector::Zero(D);
  interior[D - 1] = 0.5;
  if (!mem_K(interior))
    throw ProtocolError(
        "evaluator rejected (w, b0) = (0, 1/2); inconsistent with a nonempty bounded body");
  const double inner_radius = std::min(0.45, 0.45 / std::sqrt(R * R + 1.0));

  const double eta = gamma / (4.0 * R);
  Vector zlift(D);
  zlift.head(d) = z;
  zlift[D - 1] = 1.0;

  auto oracle = [&](const Vector& wb) -> SeparationResult {
    if (wb.norm() > 1.0) return SeparationResult::cut(wb);
    if (wb.dot(zlift) > -gamma / 2.0) return SeparationResult::cut(zlift);
    ApproxSepResult s = mem_to_approx_sep(mem_K, interior, inner_radius, 1.0, wb, eta);
    if (s.near_inside) return SeparationResult::inside();
    return SeparationResult::cut(std::move(s.hyperplane));
  };

  FeasibilityConfig fc;
  fc.initial_radius = 1.0;
  // the restricted body shrinks with gamma and R; give the search enough
  // bits to resolve it
  fc.precision_bits = std::max(
      cfg.precision_bits, static_cast<int>(std::ceil(std::log2((4.0 * R * (R + 1.0)) / gamma))) + 4);

  FeasibilityResult fr = find_feasible(oracle, D, fc);
  if (!fr.found) return ApproxSepResult::inside(evals, fr.iterations);

  Vector w = fr.point.head(d);
  if (w.isZero(0.0))
    throw ProtocolError("reduction produced a certificate with zero weight vector");
  // (w, b0) labels U(x) positive and z at most -gamma/2, so -w puts the
  // body at least gamma/2 below the query
  return ApproxSepResult::cut(-w, evals, fr.iterations);
}

}  // namespace robusthalf
