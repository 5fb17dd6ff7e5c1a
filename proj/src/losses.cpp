#include "robusthalf/losses.hpp"

namespace robusthalf {

namespace {

void require_homogeneous(const Halfspace& h, const char* what) {
  if (h.w.isZero(0.0)) throw InvalidInput(std::string(what) + ": zero weight vector");
  if (h.bias != 0.0) throw InvalidInput(std::string(what) + ": homogeneous halfspaces only");
}

}  // namespace

int margin_loss(const Halfspace& h, const LabeledExample& ex, double gamma, const NormSpec& spec) {
  require_homogeneous(h, "margin_loss");
  if (gamma < 0.0) throw InvalidInput("margin_loss: gamma must be nonnegative");
  require_same_dim(h.w, ex.x, "margin_loss");
  double q_norm = dual_norm(h.w, spec);
  return (static_cast<double>(ex.y) * h.w.dot(ex.x) <= gamma * q_norm) ? 1 : 0;
}

int robust_loss_lp(const Halfspace& h, const LabeledExample& ex, double gamma,
                   const NormSpec& spec) {
  require_homogeneous(h, "robust_loss_lp");
  if (gamma < 0.0) throw InvalidInput("robust_loss_lp: gamma must be nonnegative");
  require_same_dim(h.w, ex.x, "robust_loss_lp");
  // sup_{||delta||_p <= gamma} 1{sign(<w, x+delta>) != y}  =  1{y<w,x> - gamma||w||_q <= 0}
  double worst = static_cast<double>(ex.y) * h.w.dot(ex.x) - gamma * dual_norm(h.w, spec);
  return worst <= 0.0 ? 1 : 0;
}

double empirical_robust_risk(const Halfspace& h, const Dataset& S, double gamma,
                             const NormSpec& spec) {
  S.validate();
  long bad = 0;
  for (Eigen::Index i = 0; i < S.size(); ++i)
    bad += robust_loss_lp(h, S.example(i), gamma, spec);
  return static_cast<double>(bad) / static_cast<double>(S.size());
}

double empirical_robust_risk(const Halfspace& h, const Dataset& S, const PerturbationSet& adv,
                             const FeasibilityConfig& cfg) {
  S.validate();
  if (S.dim() != adv.anchor_dim())
    throw InvalidInput("empirical_robust_risk: dataset/adversary dimension mismatch");
  long bad = 0;
  for (Eigen::Index i = 0; i < S.size(); ++i)
    bad += certify_example(adv, h, S.example(i), cfg).robust ? 0 : 1;
  return static_cast<double>(bad) / static_cast<double>(S.size());
}

double margin_error(const Halfspace& h, const Dataset& S, double threshold, const NormSpec& spec,
                    bool normalized) {
  S.validate();
  if (h.w.isZero(0.0)) throw InvalidInput("margin_error: zero weight vector");
  double scale = normalized ? dual_norm(h.w, spec) : 1.0;
  long bad = 0;
  for (Eigen::Index i = 0; i < S.size(); ++i) {
    double m = static_cast<double>(S.y[i]) * h.w.dot(S.X.row(i).transpose());
    if (m <= threshold * scale) ++bad;
  }
  return static_cast<double>(bad) / static_cast<double>(S.size());
}

double clean_error(const Halfspace& h, const Dataset& S) {
  S.validate();
  long bad = 0;
  for (Eigen::Index i = 0; i < S.size(); ++i) {
    double s = h.score(S.X.row(i).transpose());
    if (static_cast<double>(S.y[i]) * s <= 0.0) ++bad;
  }
  return static_cast<double>(bad) / static_cast<double>(S.size());
}

}  // namespace robusthalf
