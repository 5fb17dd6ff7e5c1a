#pragma once

#include "robusthalf/rcn.hpp"
#include "robusthalf/types.hpp"

#include <optional>

namespace robusthalf {

/// Synthetic margin-realizable halfspace distribution: x uniform on the
/// unit lp ball conditioned on |<w*, x> + bias| > gamma, labels flipped
/// independently with probability eta.
struct PlantSpec {
  Eigen::Index d = 2;
  Eigen::Index m = 100;
  double gamma = 0.1;             // strict margin enforced on every sample
  double p = 2.0;                 // data norm bound ||x||_p <= 1
  double eta = 0.0;               // RCN rate, in [0, 1/2)
  uint64_t seed = 0;
  std::optional<Vector> w_star;   // default: sampled on the unit lq sphere
  std::optional<double> bias;     // affine plant when set
  double margin_slack = 0.0;      // rejection threshold is gamma + slack

  void validate() const;
};

/// Materialize m examples; metadata records the plant. Deterministic and
/// parallelism-independent: example i draws from a seed derived from
/// (seed, i). Throws after 1000 rejected draws per example.
Dataset generate(const PlantSpec& spec);

/// The same distribution as an endless stream of fresh samples.
class PlantSource final : public SampleSource {
 public:
  explicit PlantSource(PlantSpec spec);
  Eigen::Index dim() const override { return spec_.d; }
  LabeledExample next(std::mt19937_64& rng) override;

  const Vector& w_star() const { return w_star_; }
  double bias() const { return spec_.bias.value_or(0.0); }

 private:
  PlantSpec spec_;
  Vector w_star_;
};

/// One sample of the plant distribution (shared by generate and the stream).
LabeledExample plant_sample(const PlantSpec& spec, const Vector& w_star, std::mt19937_64& rng);

/// Uniform point of the unit lp ball (gamma/exponential trick for finite p,
/// a uniform box for p = inf).
Vector sample_lp_ball(Eigen::Index d, double p, std::mt19937_64& rng);

/// Point of the unit lq sphere (normalized generalized-Gaussian direction).
Vector sample_lq_sphere(Eigen::Index d, double q, std::mt19937_64& rng);

}  // namespace robusthalf
