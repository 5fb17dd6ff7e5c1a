#pragma once

#include "robusthalf/common.hpp"

#include <limits>
#include <string>

namespace robusthalf {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// Pair of Hoelder-conjugate exponents. p is stored; q is always computed
/// from p so the duality relation 1/p + 1/q = 1 cannot drift.
class NormSpec {
 public:
  explicit NormSpec(double p);

  double p() const { return p_; }
  double q() const;  // dual exponent: q = p/(p-1), with 1 <-> inf

  static NormSpec parse(const std::string& token);  // finite float or "inf"
  std::string p_token() const;

 private:
  double p_;
};

double dual_exponent(double p);

/// lp norm, p in [1, inf]. Rejects non-finite input.
double lp_norm(const Vector& v, double p);

double norm(const Vector& v, const NormSpec& spec);       // ||v||_p
double dual_norm(const Vector& v, const NormSpec& spec);  // ||v||_q

/// A maximizer u of <u, v> over the unit lp ball, so <u, v> = ||v||_q.
/// For p = 1 the mass sits on one extreme coordinate; for p = inf on the
/// sign vector (sign(0) taken as 0). Returns the zero vector when v = 0.
Vector dual_norm_maximizer(const Vector& v, double p);

/// Subgradient g of ||.||_p at d != 0: ||g||_q = 1 and <g, d> = ||d||_p.
Vector lp_subgradient(const Vector& d, double p);

}  // namespace robusthalf
