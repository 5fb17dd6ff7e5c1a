#include "robusthalf/surrogate.hpp"

#include <cmath>

namespace robusthalf {

SurrogateSpec::SurrogateSpec(double gamma_, double eta_, double epsilon_, double p)
    : gamma(gamma_), eta(eta_), epsilon(epsilon_) {
  if (!(gamma > 0.0) || gamma > 1.0) throw InvalidInput("SurrogateSpec: gamma must be in (0, 1]");
  if (!(eta >= 0.0) || eta >= 0.5) throw InvalidInput("SurrogateSpec: eta must be in [0, 1/2)");
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw InvalidInput("SurrogateSpec: epsilon must be in (0, 1)");
  q = dual_exponent(p);
  lambda = (epsilon * gamma / 2.0 + eta) / (1.0 + epsilon * gamma);
  eps_prime = lambda - eta;
  if (!(eta <= lambda && lambda <= 0.5))
    throw InvalidInput("SurrogateSpec: derived lambda outside [eta, 1/2]");
  double alt = epsilon * gamma * (1.0 - 2.0 * eta) / (2.0 * (1.0 + epsilon * gamma));
  if (std::abs(alt - eps_prime) > 1e-12)
    throw NumericFailure("SurrogateSpec: eps_prime closed forms disagree", 0);
}

double phi(double s, const SurrogateSpec& spec) {
  double slope = (s > spec.gamma) ? spec.lambda : (1.0 - spec.lambda);
  return slope * (1.0 - s / spec.gamma);
}

double phi_slope(double s, const SurrogateSpec& spec) {
  return (s > spec.gamma) ? -spec.lambda / spec.gamma : -(1.0 - spec.lambda) / spec.gamma;
}

double surrogate_value(const Vector& w, const Dataset& S, const SurrogateSpec& spec) {
  S.validate();
  if (w.size() != S.dim()) throw InvalidInput("surrogate_value: dimension mismatch");
  double p = dual_exponent(spec.q);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < S.size(); ++i) {
    Vector x = S.X.row(i).transpose();
    if (lp_norm(x, p) > 1.0 + comparison_tolerance())
      throw InvalidInput("surrogate_value: ||x||_p exceeds 1");
    acc += phi(static_cast<double>(S.y[i]) * w.dot(x), spec);
  }
  return acc / static_cast<double>(S.size());
}

double link_u(double s, double eta, double gamma) {
  if (!(eta >= 0.0) || eta >= 0.5) throw InvalidInput("link_u: eta must be in [0, 1/2)");
  if (!(gamma > 0.0)) throw InvalidInput("link_u: gamma must be positive");
  if (s < -gamma) return eta;
  if (s > gamma) return 1.0 - eta;
  return (1.0 - 2.0 * eta) / (2.0 * gamma) * s + 0.5;
}

namespace {

/// Antiderivative of the link: integral_0^t u(s) ds.
double link_integral(double t, double eta, double gamma) {
  auto mid = [&](double a) { return (1.0 - 2.0 * eta) / (4.0 * gamma) * a * a + 0.5 * a; };
  if (t > gamma) return mid(gamma) + (1.0 - eta) * (t - gamma);
  if (t < -gamma) return mid(-gamma) + eta * (t + gamma);
  return mid(t);
}

}  // namespace

double glm_loss(const Vector& w, const Vector& x, int y01, double eta, double gamma) {
  require_same_dim(w, x, "glm_loss");
  if (y01 != 0 && y01 != 1) throw InvalidInput("glm_loss: label must be 0 or 1");
  double t = w.dot(x);
  return link_integral(t, eta, gamma) - static_cast<double>(y01) * t;
}

Vector glm_grad(const Vector& w, const Vector& x, int y01, double eta, double gamma) {
  require_same_dim(w, x, "glm_grad");
  if (y01 != 0 && y01 != 1) throw InvalidInput("glm_grad: label must be 0 or 1");
  return (link_u(w.dot(x), eta, gamma) - static_cast<double>(y01)) * x;
}

}  // namespace robusthalf
