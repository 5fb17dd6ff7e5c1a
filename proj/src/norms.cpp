#include "robusthalf/norms.hpp"

#include <cmath>

namespace robusthalf {

NormSpec::NormSpec(double p) : p_(p) {
  if (std::isnan(p_) || p_ < 1.0)
    throw InvalidInput("norm exponent must lie in [1, inf], got " + std::to_string(p_));
}

double NormSpec::q() const { return dual_exponent(p_); }

NormSpec NormSpec::parse(const std::string& token) {
  if (token == "inf" || token == "Inf" || token == "INF") return NormSpec(kInfExponent);
  size_t pos = 0;
  double p = std::stod(token, &pos);
  if (pos != token.size()) throw InvalidInput("bad norm exponent token: " + token);
  return NormSpec(p);
}

std::string NormSpec::p_token() const {
  if (std::isinf(p_)) return "inf";
  std::string s = std::to_string(p_);
  // trim trailing zeros for readability
  while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
    bool dot = s.back() == '.';
    s.pop_back();
    if (dot) break;
  }
  return s;
}

double dual_exponent(double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidInput("norm exponent must lie in [1, inf]");
  if (p == 1.0) return kInfExponent;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(const Vector& v, double p) {
  require_finite(v, "lp_norm");
  if (std::isnan(p) || p < 1.0) throw InvalidInput("norm exponent must lie in [1, inf]");
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  if (p == 1.0) return v.cwiseAbs().sum();
  if (p == 2.0) return v.norm();
  // scale by the max magnitude so large p does not overflow
  double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

double norm(const Vector& v, const NormSpec& spec) { return lp_norm(v, spec.p()); }

double dual_norm(const Vector& v, const NormSpec& spec) { return lp_norm(v, spec.q()); }

Vector dual_norm_maximizer(const Vector& v, double p) {
  require_finite(v, "dual_norm_maximizer");
  const Eigen::Index d = v.size();
  Vector u = Vector::Zero(d);
  if (std::isinf(p)) {
    for (Eigen::Index i = 0; i < d; ++i) u[i] = (v[i] > 0.0) - (v[i] < 0.0);
    return u;
  }
  if (p == 1.0) {
    Eigen::Index best = 0;
    v.cwiseAbs().maxCoeff(&best);
    if (v[best] != 0.0) u[best] = v[best] > 0.0 ? 1.0 : -1.0;
    return u;
  }
  if (p == 2.0) {
    double n = v.norm();
    if (n > 0.0) u = v / n;
    return u;
  }
  const double q = dual_exponent(p);
  const double nq = lp_norm(v, q);
  if (nq == 0.0) return u;
  for (Eigen::Index i = 0; i < d; ++i) {
    double m = std::abs(v[i]) / nq;
    u[i] = (v[i] >= 0.0 ? 1.0 : -1.0) * std::pow(m, q - 1.0);
    if (v[i] == 0.0) u[i] = 0.0;
  }
  return u;
}

Vector lp_subgradient(const Vector& d, double p) {
  // the maximizer of <g, d> over the unit lq ball, q dual to p
  Vector g = dual_norm_maximizer(d, dual_exponent(p));
  if (g.isZero(0.0)) throw InvalidInput("lp_subgradient: zero vector has no useful subgradient");
  return g;
}

}  // namespace robusthalf
