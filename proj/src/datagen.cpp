#include "robusthalf/datagen.hpp"

#include <cmath>

namespace robusthalf {

void PlantSpec::validate() const {
  if (d < 1) throw InvalidInput("PlantSpec: d must be >= 1");
  if (m < 1) throw InvalidInput("PlantSpec: m must be >= 1");
  if (!(gamma > 0.0) || gamma >= 1.0) throw InvalidInput("PlantSpec: gamma must be in (0, 1)");
  if (!(eta >= 0.0) || eta >= 0.5) throw InvalidInput("PlantSpec: eta must be in [0, 1/2)");
  if (std::isnan(p) || p < 1.0) throw InvalidInput("PlantSpec: p must be in [1, inf]");
  if (margin_slack < 0.0) throw InvalidInput("PlantSpec: margin slack must be nonnegative");
  if (w_star && w_star->size() != d) throw InvalidInput("PlantSpec: w_star dimension mismatch");
}

Vector sample_lp_ball(Eigen::Index d, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (std::isinf(p)) {
    Vector x(d);
    for (Eigen::Index i = 0; i < d; ++i) x[i] = 2.0 * unif(rng) - 1.0;
    return x;
  }
  // Barthe et al.: g_i with density prop. to exp(-|t|^p), e ~ Exp(1),
  // x = g / (sum |g_i|^p + e)^{1/p} is uniform in the ball
  std::gamma_distribution<double> gamma_p(1.0 / p, 1.0);
  std::exponential_distribution<double> expo(1.0);
  Vector g(d);
  double sum_p = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    double mag = std::pow(gamma_p(rng), 1.0 / p);
    double sign = unif(rng) < 0.5 ? -1.0 : 1.0;
    g[i] = sign * mag;
    sum_p += std::pow(mag, p);
  }
  double denom = std::pow(sum_p + expo(rng), 1.0 / p);
  return g / denom;
}

Vector sample_lq_sphere(Eigen::Index d, double q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector g(d);
  if (std::isinf(q)) {
    // limit of the generalized Gaussian: uniform signs with unit magnitudes
    // would be atomic; use a uniform box direction normalized in sup norm
    for (Eigen::Index i = 0; i < d; ++i) g[i] = 2.0 * unif(rng) - 1.0;
    double n = g.cwiseAbs().maxCoeff();
    if (n == 0.0) return sample_lq_sphere(d, q, rng);
    return g / n;
  }
  std::gamma_distribution<double> gamma_q(1.0 / q, 1.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    double mag = std::pow(gamma_q(rng), 1.0 / q);
    g[i] = (unif(rng) < 0.5 ? -1.0 : 1.0) * mag;
  }
  double n = lp_norm(g, q);
  if (n == 0.0) return sample_lq_sphere(d, q, rng);
  return g / n;
}

LabeledExample plant_sample(const PlantSpec& spec, const Vector& w_star, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double threshold = spec.gamma + spec.margin_slack;
  const double b = spec.bias.value_or(0.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vector x = sample_lp_ball(spec.d, spec.p, rng);
    double score = w_star.dot(x) + b;
    if (std::abs(score) > threshold) {
      int y_clean = score > 0.0 ? 1 : -1;
      int y = (unif(rng) < spec.eta) ? -y_clean : y_clean;
      return {std::move(x), y};
    }
  }
  throw GenerationError(
      "plant_sample: margin region too thin for the sampled w*; try a smaller gamma");
}

namespace {

Vector resolve_w_star(const PlantSpec& spec) {
  if (spec.w_star) {
    Vector w = *spec.w_star;
    require_finite(w, "PlantSpec.w_star");
    if (w.isZero(0.0)) throw InvalidInput("PlantSpec: w_star must be nonzero");
    return w;
  }
  std::mt19937_64 rng(derive_seed(spec.seed, "plant-wstar", 0));
  return sample_lq_sphere(spec.d, dual_exponent(spec.p), rng);
}

}  // namespace

Dataset generate(const PlantSpec& spec) {
  spec.validate();
  Vector w_star = resolve_w_star(spec);

  std::vector<LabeledExample> examples;
  examples.reserve(static_cast<size_t>(spec.m));
  for (Eigen::Index i = 0; i < spec.m; ++i) {
    std::mt19937_64 rng(derive_seed(spec.seed, "plant-example", static_cast<uint64_t>(i)));
    examples.push_back(plant_sample(spec, w_star, rng));
  }
  Dataset S = Dataset::from_examples(examples);

  DatasetMetadata meta;
  meta.seed = spec.seed;
  meta.gamma = spec.gamma;
  meta.eta = spec.eta;
  meta.p = spec.p;
  meta.w_star = w_star;
  meta.bias = spec.bias.value_or(0.0);
  S.meta = meta;

  // post-generation certificates: strict margin and the norm bound
  for (Eigen::Index i = 0; i < spec.m; ++i) {
    Vector x = S.X.row(i).transpose();
    if (!(std::abs(w_star.dot(x) + meta.bias.value()) > spec.gamma))
      throw NumericFailure("generate: margin certificate violated", i);
    if (lp_norm(x, spec.p) > 1.0 + comparison_tolerance())
      throw NumericFailure("generate: norm certificate violated", i);
  }
  return S;
}

PlantSource::PlantSource(PlantSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  w_star_ = resolve_w_star(spec_);
}

LabeledExample PlantSource::next(std::mt19937_64& rng) {
  return plant_sample(spec_, w_star_, rng);
}

}  // namespace robusthalf
