#include "robusthalf/rerm.hpp"

#include <chrono>
#include <cmath>

namespace robusthalf {

namespace {

struct CandidateView {
  Vector w;
  double bias = 0.0;
};

CandidateView split_candidate(const Vector& v, Eigen::Index d, bool with_bias) {
  CandidateView c;
  c.w = v.head(d);
  c.bias = with_bias ? v[d] : 0.0;
  return c;
}

// control-flow signal: some example defeats every candidate, stop searching
struct ProvenInfeasible {};

}  // namespace

RermResult rerm(const Dataset& S, const PerturbationSet& adv, const RermConfig& cfg) {
  S.validate();
  if (S.dim() != adv.anchor_dim())
    throw InvalidInput("rerm: dataset/adversary dimension mismatch");
  const auto t0 = std::chrono::steady_clock::now();

  const Eigen::Index d = adv.dim();
  const Eigen::Index search_dim = d + (cfg.with_bias ? 1 : 0);

  // data scale: largest search-ball radius over the training anchors
  double scale = 0.0;
  for (Eigen::Index i = 0; i < S.size(); ++i)
    scale = std::max(scale, adv.search_radius(S.X.row(i).transpose()));
  const double tau =
      cfg.tau > 0.0 ? cfg.tau : std::ldexp(std::max(scale, 1.0), -cfg.precision_bits);

  FeasibilityConfig cert_cfg;
  cert_cfg.precision_bits = cfg.precision_bits;
  cert_cfg.tolerance = tau;

  RermResult out;
  double best_margin = -std::numeric_limits<double>::infinity();

  auto emit_cut = [&](int y, const Vector& z) -> SeparationResult {
    Vector c(search_dim);
    c.head(d) = -static_cast<double>(y) * z;
    if (cfg.with_bias) c[d] = -static_cast<double>(y);
    // z = 0 without a bias coordinate: y <w, 0> <= 0 for every candidate
    if (c.isZero(0.0)) throw ProvenInfeasible{};
    return SeparationResult::cut(std::move(c));
  };

  auto oracle = [&](const Vector& v) -> SeparationResult {
    if (v.norm() > 1.0) return SeparationResult::cut(v);
    CandidateView cand = split_candidate(v, d, cfg.with_bias);

    if (cand.w.isZero(0.0)) {
      // score is y * bias everywhere; the first non-positively-scored
      // example supplies the cut through its clean point
      for (Eigen::Index i = 0; i < S.size(); ++i) {
        double ys = static_cast<double>(S.y[i]) * cand.bias;
        if (ys <= 0.0) return emit_cut(S.y[i], S.X.row(i).transpose());
      }
      return SeparationResult::inside();
    }

    Halfspace h(cand.w, cand.bias);
    // first counterexample in dataset order supplies the cut; the full
    // normalized margin of the candidate feeds the infeasibility caveat
    double candidate_margin = std::numeric_limits<double>::infinity();
    int cut_label = 0;
    Vector cut_point;
    for (Eigen::Index i = 0; i < S.size(); ++i) {
      LabeledExample ex = S.example(i);
      ++out.stats.cert_calls;
      if (auto lm = adv.linear_min(ex.x, static_cast<double>(ex.y) * h.w);
          lm && !cfg.force_oracle) {
        double m = lm->value + static_cast<double>(ex.y) * h.bias;
        candidate_margin = std::min(candidate_margin, m);
        if (m <= 0.0 && cut_label == 0) {
          cut_label = ex.y;
          cut_point = lm->argmin;
        }
      } else {
        CertResult cr = cert(adv, h, ex, cert_cfg);
        out.stats.oracle_calls += cr.oracle_calls;
        if (!cr.robust) return emit_cut(ex.y, cr.counterexample);
      }
    }
    best_margin = std::max(best_margin, candidate_margin / h.w.norm());
    if (cut_label != 0) return emit_cut(cut_label, cut_point);
    return SeparationResult::inside();
  };

  FeasibilityConfig outer;
  outer.initial_radius = 1.0;  // halfspaces are scale invariant
  outer.precision_bits = cfg.precision_bits;
  outer.tolerance = tau;
  FeasibilityResult fr;
  try {
    fr = find_feasible(oracle, search_dim, outer);
  } catch (const ProvenInfeasible&) {
    out.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }
  out.stats.outer_iterations = fr.iterations;

  if (fr.found) {
    CandidateView cand = split_candidate(fr.point, d, cfg.with_bias);
    if (cand.w.isZero(0.0)) {
      // bias-only separator (single-label data): nudge the weights so the
      // hypothesis is a representable halfspace, then re-verify below
      double mu = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < S.size(); ++i)
        mu = std::min(mu, static_cast<double>(S.y[i]) * cand.bias);
      cand.w = Vector::Zero(d);
      cand.w[0] = mu / (2.0 * (scale + 1.0));
    }
    Halfspace sep(cand.w, cand.bias);

    // soundness gate: the separator must re-certify on every example
    for (Eigen::Index i = 0; i < S.size(); ++i) {
      CertResult cr = certify_example(adv, sep, S.example(i), cert_cfg, cfg.force_oracle);
      if (!cr.robust)
        throw NumericFailure("rerm returned a separator that fails re-certification", i);
    }
    out.separator = std::move(sep);
  } else {
    out.low_margin_caveat = std::isfinite(best_margin) && best_margin > -10.0 * tau;
  }

  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

RermResult rerm_feature_mapped(const Dataset& S, const AffineImageHull& adv,
                               const RermConfig& cfg) {
  return rerm(S, adv, cfg);
}

}  // namespace robusthalf
