#include "robusthalf/mirror.hpp"

#include "robusthalf/norms.hpp"

#include <cmath>

namespace robusthalf {

namespace {

/// Signed power map: sign(v_i) |v_i|^e.
Vector signed_pow(const Vector& v, double e) {
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v[i]);
    out[i] = (v[i] >= 0.0 ? 1.0 : -1.0) * std::pow(a, e);
    if (v[i] == 0.0) out[i] = 0.0;
  }
  return out;
}

}  // namespace

// --- LqMirrorMap ------------------------------------------------------------

LqMirrorMap::LqMirrorMap(double q, Eigen::Index dim) : q_(q), dim_(dim) {
  if (!(q > 1.0) || q > 2.0) throw InvalidInput("LqMirrorMap: q must lie in (1, 2]");
  if (dim < 1) throw InvalidInput("LqMirrorMap: dimension must be >= 1");
}

Vector LqMirrorMap::to_dual(const Vector& w) const {
  // grad of 0.5 ||w||_q^2: ||w||_q^{2-q} sign(w) |w|^{q-1}
  double n = lp_norm(w, q_);
  if (n == 0.0) return Vector::Zero(dim_);
  return std::pow(n, 2.0 - q_) * signed_pow(w, q_ - 1.0);
}

Vector LqMirrorMap::from_dual(const Vector& theta) const {
  // conjugate potential 0.5 ||theta||_p^2, p dual to q
  double p = dual_exponent(q_);
  double n = lp_norm(theta, p);
  if (n == 0.0) return Vector::Zero(dim_);
  return std::pow(n, 2.0 - p) * signed_pow(theta, p - 1.0);
}

Vector LqMirrorMap::project(const Vector& w) const {
  double n = lp_norm(w, q_);
  if (n <= 1.0) return w;
  return w / n;
}

// --- EntropyMirrorMap -------------------------------------------------------

EntropyMirrorMap::EntropyMirrorMap(Eigen::Index model_dim) : dim_(model_dim) {
  if (model_dim < 1) throw InvalidInput("EntropyMirrorMap: dimension must be >= 1");
}

Vector EntropyMirrorMap::initial_point() const {
  return Vector::Constant(2 * dim_, 1.0 / static_cast<double>(2 * dim_));
}

Vector EntropyMirrorMap::to_dual(const Vector& a) const {
  Vector out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < 0.0) throw InvalidInput("EntropyMirrorMap: negative simplex coordinate");
    out[i] = std::log(std::max(a[i], 1e-308));
  }
  return out;
}

Vector EntropyMirrorMap::from_dual(const Vector& theta) const {
  return theta.array().exp().matrix();
}

Vector EntropyMirrorMap::project(const Vector& a) const {
  double s = a.sum();
  if (!(s > 0.0)) throw NumericFailure("EntropyMirrorMap: non-positive simplex mass", 0);
  return a / s;
}

Vector EntropyMirrorMap::lift_gradient(const Vector& g) const {
  Vector out(2 * dim_);
  out.head(dim_) = g;
  out.tail(dim_) = -g;
  return out;
}

Vector EntropyMirrorMap::to_model(const Vector& a) const {
  return a.head(dim_) - a.tail(dim_);
}

double EntropyMirrorMap::diameter() const {
  return std::log(static_cast<double>(2 * dim_));
}

std::unique_ptr<MirrorMap> make_mirror_map(double q, Eigen::Index model_dim) {
  if (q == 1.0) return std::make_unique<EntropyMirrorMap>(model_dim);
  return std::make_unique<LqMirrorMap>(q, model_dim);
}

// --- SMD driver -------------------------------------------------------------

SmdRun smd_minimize(const StochasticGradient& grad, Eigen::Index dim, double lipschitz,
                    const MirrorDescentConfig& cfg) {
  if (cfg.steps < 1) throw InvalidInput("smd_minimize: step count must be >= 1");
  if (!(lipschitz > 0.0)) throw InvalidInput("smd_minimize: Lipschitz bound must be positive");
  auto map = make_mirror_map(cfg.q, dim);

  double step = cfg.step_size > 0.0
                    ? cfg.step_size
                    : map->diameter() / (lipschitz * std::sqrt(static_cast<double>(cfg.steps)));

  std::mt19937_64 rng(cfg.seed);
  Vector native = map->initial_point();
  Vector avg = Vector::Zero(dim);

  for (long k = 0; k < cfg.steps; ++k) {
    Vector w = map->to_model(native);
    avg += w;
    Vector g = grad(w, rng);
    if (g.size() != dim || !g.allFinite())
      throw NumericFailure("smd_minimize: bad stochastic gradient", k);
    Vector theta = map->to_dual(native) - step * map->lift_gradient(g);
    // guard the exponential map against overflow: shifting the dual vector
    // is absorbed by the simplex normalization
    if (cfg.q == 1.0) theta.array() -= theta.maxCoeff();
    native = map->project(map->from_dual(theta));
  }

  SmdRun run;
  run.steps = cfg.steps;
  run.step_size = step;
  run.w = cfg.average_iterates ? Vector(avg / static_cast<double>(cfg.steps))
                               : map->to_model(native);
  return run;
}

}  // namespace robusthalf
