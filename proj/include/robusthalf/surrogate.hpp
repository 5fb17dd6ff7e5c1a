#pragma once

#include "robusthalf/norms.hpp"
#include "robusthalf/types.hpp"

namespace robusthalf {

/// Parameter bundle for the noise-aware margin surrogates. lambda and the
/// required suboptimality eps_prime are derived, never set directly; the
/// constructor asserts eta <= lambda <= 1/2 and that the two closed forms
/// of eps_prime agree.
struct SurrogateSpec {
  double gamma;      // margin, in (0, 1]
  double eta;        // noise rate, in [0, 1/2)
  double epsilon;    // target excess error, in (0, 1)
  double q;          // dual exponent of the data norm p
  double lambda;     // mixing slope (eps*gamma/2 + eta) / (1 + eps*gamma)
  double eps_prime;  // lambda - eta

  SurrogateSpec(double gamma, double eta, double epsilon, double p);
};

/// Two-slope hinge: lambda (1 - s/gamma) for s > gamma, (1 - lambda)(1 - s/gamma)
/// otherwise. Continuous at the kink, convex whenever lambda <= 1/2.
double phi(double s, const SurrogateSpec& spec);

/// Slope of phi at s (the s <= gamma branch at the kink).
double phi_slope(double s, const SurrogateSpec& spec);

/// Empirical surrogate objective: mean of phi(y <w, x>) over the dataset.
/// Every feature vector must satisfy ||x||_p <= 1.
double surrogate_value(const Vector& w, const Dataset& S, const SurrogateSpec& spec);

/// Clamped affine link: eta below -gamma, 1-eta above gamma, slope
/// (1-2eta)/(2gamma) through 1/2 in between.
double link_u(double s, double eta, double gamma);

/// Integral surrogate for the link formulation, labels in {0, 1}:
/// loss = integral_0^{<w,x>} (u(s) - y) ds, in closed piecewise form.
double glm_loss(const Vector& w, const Vector& x, int y01, double eta, double gamma);

/// Gradient of glm_loss: (u(<w,x>) - y) x.
Vector glm_grad(const Vector& w, const Vector& x, int y01, double eta, double gamma);

}  // namespace robusthalf
