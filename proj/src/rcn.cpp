#include "robusthalf/rcn.hpp"

#include "robusthalf/norms.hpp"

#include <cmath>

namespace robusthalf {

DatasetSampler::DatasetSampler(Dataset S, double p_bound) : S_(std::move(S)) {
  S_.validate();
  for (Eigen::Index i = 0; i < S_.size(); ++i)
    if (lp_norm(S_.X.row(i).transpose(), p_bound) > 1.0 + comparison_tolerance())
      throw InvalidInput("DatasetSampler: ||x||_p exceeds 1 at row " + std::to_string(i));
}

LabeledExample DatasetSampler::next(std::mt19937_64& rng) {
  std::uniform_int_distribution<Eigen::Index> pick(0, S_.size() - 1);
  return S_.example(pick(rng));
}

namespace {

long budget_from_target(double lipschitz, double target, double q, Eigen::Index dim) {
  // step budgets: L^2 / ((q-1) eps'^2) for q > 1 and
  // L^2 log(2d) / eps'^2 for q = 1, with a small constant factor
  double geometry = (q > 1.0) ? 1.0 / (q - 1.0) : std::log(static_cast<double>(2 * dim));
  double t = 2.0 * lipschitz * lipschitz * geometry / (target * target);
  return static_cast<long>(std::ceil(std::min(t, 5e7)));
}

TrainedModel run_training(SampleSource& source, double q, double lipschitz, long steps,
                          const RcnTrainConfig& cfg, const SurrogateSpec* leaky_spec,
                          bool glm_labels, double eta, double gamma, double p_bound) {
  const Eigen::Index d = source.dim();
  MirrorDescentConfig mdc;
  mdc.q = q;
  mdc.steps = steps;
  mdc.step_size = cfg.step_size;
  mdc.average_iterates = cfg.average_iterates;
  mdc.seed = cfg.seed;

  double loss_acc = 0.0;
  long loss_n = 0;

  auto grad = [&](const Vector& w, std::mt19937_64& rng) -> Vector {
    Vector g = Vector::Zero(d);
    for (int b = 0; b < cfg.batch_size; ++b) {
      LabeledExample ex = source.next(rng);
      if (lp_norm(ex.x, p_bound) > 1.0 + comparison_tolerance())
        throw InvalidInput("train: sampled feature with ||x||_p > 1");
      if (glm_labels) {
        int y01 = ex.y > 0 ? 1 : 0;
        double t = w.dot(ex.x);
        g += (link_u(t, eta, gamma) - static_cast<double>(y01)) * ex.x;
        loss_acc += glm_loss(w, ex.x, y01, eta, gamma);
      } else {
        double s = static_cast<double>(ex.y) * w.dot(ex.x);
        g += phi_slope(s, *leaky_spec) * static_cast<double>(ex.y) * ex.x;
        loss_acc += phi(s, *leaky_spec);
      }
      ++loss_n;
    }
    return g / static_cast<double>(cfg.batch_size);
  };

  SmdRun run = smd_minimize(grad, d, lipschitz, mdc);

  TrainedModel m;
  m.w = std::move(run.w);
  m.q = q;
  m.steps = run.steps;
  m.step_size = run.step_size;
  m.surrogate_estimate = loss_n > 0 ? loss_acc / static_cast<double>(loss_n) : 0.0;
  if (lp_norm(m.w, q) > 1.0 + 1e-9)
    throw NumericFailure("trained model escaped the unit lq ball", run.steps);
  return m;
}

}  // namespace

long default_leaky_steps(const SurrogateSpec& spec, Eigen::Index dim) {
  double lipschitz = (1.0 - spec.lambda) / spec.gamma;
  return budget_from_target(lipschitz, spec.eps_prime, spec.q, dim);
}

long default_glm_steps(double gamma, double eta, double epsilon, double q, Eigen::Index dim) {
  double target = epsilon * gamma * (1.0 - 2.0 * eta) / 16.0;
  return budget_from_target(1.0, target, q, dim);
}

TrainedModel train_leaky(SampleSource& source, double gamma, double eta, double epsilon, double p,
                         const RcnTrainConfig& cfg) {
  SurrogateSpec spec(gamma, eta, epsilon, p);
  double lipschitz = (1.0 - spec.lambda) / spec.gamma;  // |phi'| <= (1-lambda)/gamma, ||x||_p <= 1
  long steps = cfg.steps > 0 ? cfg.steps : default_leaky_steps(spec, source.dim());
  return run_training(source, spec.q, lipschitz, steps, cfg, &spec, false, eta, gamma, p);
}

TrainedModel train_glm(SampleSource& source, double gamma, double eta, double epsilon, double p,
                       const RcnTrainConfig& cfg) {
  if (!(gamma > 0.0) || gamma > 1.0) throw InvalidInput("train_glm: gamma must be in (0, 1]");
  if (!(eta >= 0.0) || eta >= 0.5) throw InvalidInput("train_glm: eta must be in [0, 1/2)");
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw InvalidInput("train_glm: epsilon must be in (0, 1)");
  double q = dual_exponent(p);
  // |u - y| <= 1 and ||x||_p <= 1 bound the gradient in the dual norm
  double lipschitz = 1.0;
  long steps = cfg.steps > 0 ? cfg.steps : default_glm_steps(gamma, eta, epsilon, q, source.dim());
  return run_training(source, q, lipschitz, steps, cfg, nullptr, true, eta, gamma, p);
}

}  // namespace robusthalf
