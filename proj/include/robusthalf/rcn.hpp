#pragma once

#include "robusthalf/mirror.hpp"
#include "robusthalf/surrogate.hpp"
#include "robusthalf/types.hpp"

#include <memory>

namespace robusthalf {

/// Stream of labeled examples. Implementations must be deterministic given
/// the rng stream they are handed.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual Eigen::Index dim() const = 0;
  virtual LabeledExample next(std::mt19937_64& rng) = 0;
};

/// Uniform sampling with replacement from a fixed dataset. Feature norms
/// are validated once against the data norm bound at construction.
class DatasetSampler final : public SampleSource {
 public:
  DatasetSampler(Dataset S, double p_bound);
  Eigen::Index dim() const override { return S_.dim(); }
  LabeledExample next(std::mt19937_64& rng) override;

 private:
  Dataset S_;
};

struct TrainedModel {
  Vector w;  // ||w||_q <= 1 (+1e-9)
  double q = 2.0;
  long steps = 0;
  double step_size = 0.0;
  double surrogate_estimate = 0.0;  // running mean of sampled losses
};

struct RcnTrainConfig {
  long steps = 0;          // 0: budget from the suboptimality target
  int batch_size = 1;
  uint64_t seed = 0;
  bool average_iterates = true;
  double step_size = 0.0;  // 0: diameter / (L sqrt(T))
  double margin_fraction = 0.5;  // evaluation margin as a fraction of gamma
};

/// Margin-robust learning under random classification noise with the
/// two-slope hinge surrogate, optimized by stochastic mirror descent over
/// the unit lq ball (q dual to the data norm p).
TrainedModel train_leaky(SampleSource& source, double gamma, double eta, double epsilon, double p,
                         const RcnTrainConfig& cfg = {});

/// Same guarantee chain through the link-function (GLM) integral surrogate;
/// labels are internally mapped to {0, 1}.
TrainedModel train_glm(SampleSource& source, double gamma, double eta, double epsilon, double p,
                       const RcnTrainConfig& cfg = {});

/// Default step budgets implied by the suboptimality targets.
long default_leaky_steps(const SurrogateSpec& spec, Eigen::Index dim);
long default_glm_steps(double gamma, double eta, double epsilon, double q, Eigen::Index dim);

}  // namespace robusthalf
