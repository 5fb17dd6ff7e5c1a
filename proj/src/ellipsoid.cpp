#include "robusthalf/ellipsoid.hpp"

#include <cmath>

namespace robusthalf {

long FeasibilityConfig::max_iterations(Eigen::Index dim) const {
  double d = static_cast<double>(dim);
  return static_cast<long>(std::ceil(2.0 * d * (d + 1.0) * precision_bits * std::log(2.0)));
}

namespace {

FeasibilityResult bisection_1d(const OracleFn& oracle, const FeasibilityConfig& cfg) {
  FeasibilityResult res;
  double lo = -cfg.initial_radius;
  double hi = cfg.initial_radius;
  const double resolution = std::ldexp(cfg.initial_radius, -cfg.precision_bits);
  const long budget = cfg.max_iterations(1);
  while (res.iterations < budget && (hi - lo) > resolution) {
    ++res.iterations;
    Vector mid(1);
    mid[0] = 0.5 * (lo + hi);
    ++res.oracle_calls;
    SeparationResult s = oracle(mid);
    if (s.is_inside()) {
      res.found = true;
      res.point = mid;
      return res;
    }
    if (!std::isfinite(s.hyperplane[0]) || s.hyperplane[0] == 0.0)
      throw ProtocolError("1-d separation oracle returned a zero/non-finite direction");
    if (cfg.track_volume) res.det_ratios.push_back(0.25);  // (length/2)^2 per halving
    if (s.hyperplane[0] > 0.0)
      hi = mid[0];  // K subset of {v <= mid}
    else
      lo = mid[0];
  }
  return res;
}

}  // namespace

FeasibilityResult find_feasible(const OracleFn& oracle, Eigen::Index dim,
                                const FeasibilityConfig& cfg) {
  if (dim < 1) throw InvalidInput("find_feasible: dimension must be >= 1");
  if (!(cfg.initial_radius > 0.0)) throw InvalidInput("find_feasible: initial radius must be > 0");
  if (cfg.precision_bits < 1) throw InvalidInput("find_feasible: precision bits must be >= 1");
  if (dim == 1) return bisection_1d(oracle, cfg);

  const double d = static_cast<double>(dim);
  FeasibilityResult res;
  EllipsoidState st;
  st.center = Vector::Zero(dim);
  st.shape = Matrix::Identity(dim, dim) * (cfg.initial_radius * cfg.initial_radius);

  const long budget = cfg.max_iterations(dim);
  const double empty_trace = std::pow(std::ldexp(cfg.initial_radius, -cfg.precision_bits), 2.0);

  while (res.iterations < budget) {
    if (st.shape.trace() < empty_trace) return res;  // no 2^-b ball fits
    ++res.iterations;
    ++res.oracle_calls;
    SeparationResult s = oracle(st.center);
    if (s.is_inside()) {
      res.found = true;
      res.point = st.center;
      return res;
    }
    const Vector& g = s.hyperplane;
    if (g.size() != dim) throw ProtocolError("separation oracle returned wrong-dimension cut");

    Vector Ag = st.shape * g;
    double gAg = g.dot(Ag);
    if (!(gAg > 0.0) || !std::isfinite(gAg)) {
      // one repair attempt: symmetrize + jitter, then retry the form
      st.shape = 0.5 * (st.shape + st.shape.transpose());
      st.shape += Matrix::Identity(dim, dim) * (1e-14 * st.shape.trace());
      Ag = st.shape * g;
      gAg = g.dot(Ag);
      if (!(gAg > 0.0) || !std::isfinite(gAg))
        throw NumericFailure("ellipsoid update lost positive definiteness", res.iterations);
    }
    Vector atimes = Ag / std::sqrt(gAg);  // A g~ with g~ = g / sqrt(g^T A g)

    double prev_det = 0.0;
    if (cfg.track_volume) prev_det = st.shape.determinant();

    // central cut: c' = c - (1/(d+1)) A g~,
    //              A' = d^2/(d^2-1) (A - 2/(d+1) (A g~)(A g~)^T)
    st.center -= atimes / (d + 1.0);
    st.shape = (d * d / (d * d - 1.0)) *
               (st.shape - (2.0 / (d + 1.0)) * (atimes * atimes.transpose()));

    if (cfg.track_volume) {
      double new_det = st.shape.determinant();
      res.det_ratios.push_back(new_det / prev_det);
    }

    // numerical repair: exact symmetry, floor tiny eigen-directions
    st.shape = 0.5 * (st.shape + st.shape.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(st.shape, Eigen::EigenvaluesOnly);
    double floor_ev = 1e-14 * std::abs(st.shape.trace());
    double min_ev = eig.eigenvalues().minCoeff();
    if (min_ev < floor_ev) st.shape += Matrix::Identity(dim, dim) * (floor_ev - min_ev);

    if (!st.center.allFinite() || !st.shape.allFinite())
      throw NumericFailure("ellipsoid state became non-finite", res.iterations);
  }
  return res;
}

}  // namespace robusthalf
