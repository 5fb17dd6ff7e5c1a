#pragma once

#include "robusthalf/common.hpp"

#include <functional>
#include <memory>
#include <random>

namespace robusthalf {

/// Geometry of a mirror-descent run: the potential's gradient map and its
/// inverse, plus the Bregman projection onto the unit ball domain. The
/// native state may live in a lifted space (the entropy map runs on the 2d
/// simplex and exposes signed weights through to_model).
class MirrorMap {
 public:
  virtual ~MirrorMap() = default;

  virtual Eigen::Index native_dim() const = 0;
  virtual Eigen::Index model_dim() const = 0;
  virtual Vector initial_point() const = 0;
  virtual Vector to_dual(const Vector& native) const = 0;
  virtual Vector from_dual(const Vector& dual) const = 0;
  virtual Vector project(const Vector& native) const = 0;
  virtual Vector lift_gradient(const Vector& model_grad) const = 0;
  virtual Vector to_model(const Vector& native) const = 0;
  /// Potential diameter over the domain (step-size scale).
  virtual double diameter() const = 0;
};

/// Half-squared lq potential on the unit lq ball, q in (1, 2]. The Bregman
/// projection onto the ball of the same norm is the radial rescale
/// w / ||w||_q (the dual-multiplier equation collapses to that closed form).
class LqMirrorMap final : public MirrorMap {
 public:
  LqMirrorMap(double q, Eigen::Index dim);
  Eigen::Index native_dim() const override { return dim_; }
  Eigen::Index model_dim() const override { return dim_; }
  Vector initial_point() const override { return Vector::Zero(dim_); }
  Vector to_dual(const Vector& native) const override;
  Vector from_dual(const Vector& dual) const override;
  Vector project(const Vector& native) const override;
  Vector lift_gradient(const Vector& g) const override { return g; }
  Vector to_model(const Vector& native) const override { return native; }
  double diameter() const override { return 0.5; }

 private:
  double q_;
  Eigen::Index dim_;
};

/// Entropy potential on the 2d simplex for the l1 ball: w is represented as
/// a+ - a- with (a+, a-) on the probability simplex (exponentiated-gradient
/// plus/minus lift). The KL projection onto the simplex is normalization.
class EntropyMirrorMap final : public MirrorMap {
 public:
  explicit EntropyMirrorMap(Eigen::Index model_dim);
  Eigen::Index native_dim() const override { return 2 * dim_; }
  Eigen::Index model_dim() const override { return dim_; }
  Vector initial_point() const override;
  Vector to_dual(const Vector& native) const override;
  Vector from_dual(const Vector& dual) const override;
  Vector project(const Vector& native) const override;
  Vector lift_gradient(const Vector& g) const override;
  Vector to_model(const Vector& native) const override;
  double diameter() const override;

 private:
  Eigen::Index dim_;
};

std::unique_ptr<MirrorMap> make_mirror_map(double q, Eigen::Index model_dim);

struct MirrorDescentConfig {
  double q = 2.0;
  long steps = 1000;
  double step_size = 0.0;  // 0: diameter / (L sqrt(T))
  bool average_iterates = true;
  uint64_t seed = 0;
};

struct SmdRun {
  Vector w;  // model-space output with ||w||_q <= 1
  long steps = 0;
  double step_size = 0.0;
};

/// Stochastic gradient at the current model point; the rng is the run's
/// dedicated stream.
using StochasticGradient = std::function<Vector(const Vector& w, std::mt19937_64& rng)>;

/// Stochastic mirror descent over the unit lq ball:
/// w_{k+1} = project(from_dual(to_dual(w_k) - step * grad)). Returns the
/// uniform average of the query points unless configured otherwise.
SmdRun smd_minimize(const StochasticGradient& grad, Eigen::Index dim, double lipschitz,
                    const MirrorDescentConfig& cfg);

}  // namespace robusthalf
