#pragma once

#include "robusthalf/norms.hpp"
#include "robusthalf/types.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace robusthalf {

/// Answer of a separation oracle: either the query lies in the body, or a
/// hyperplane c with <c, z'> <= <c, z> for every z' in the body.
struct SeparationResult {
  enum class Kind { Inside, Hyperplane };
  Kind kind = Kind::Inside;
  Vector hyperplane;  // nonzero and finite when kind == Hyperplane

  static SeparationResult inside() { return {}; }
  static SeparationResult cut(Vector c);
  bool is_inside() const { return kind == Kind::Inside; }
};

/// Exact linear minimization over a body: min_z <dir, z> and its argmin.
struct LinearMinimum {
  double value = 0.0;
  Vector argmin;
};

/// Affine hull of a flat body: an anchor point of the body plus an
/// orthonormal basis (d x r, r < d) of the direction space. Volume-based
/// searches must run inside this subspace or they certify nothing.
struct AffineHull {
  Vector anchor;
  Matrix basis;
};

/// A convex adversary U. U(x) contains x itself (for feature-mapped hulls,
/// the image of x). Oracle calls are pure; objects are immutable after
/// construction.
class PerturbationSet {
 public:
  virtual ~PerturbationSet() = default;

  /// Dimension of the perturbation space (where z lives).
  virtual Eigen::Index dim() const = 0;
  /// Dimension of the anchor x; equals dim() except for feature-mapped sets.
  virtual Eigen::Index anchor_dim() const { return dim(); }

  virtual SeparationResult sep(const Vector& x, const Vector& z) const = 0;
  virtual bool mem(const Vector& x, const Vector& z) const;

  /// Bound r with U(x) contained in B(x, r) for every x, when known.
  virtual std::optional<double> offset_radius() const { return std::nullopt; }
  /// Bound R with U(x) contained in B(0, R); default offset_radius + ||x||.
  /// Throws InvalidInput when no bound is available.
  virtual double search_radius(const Vector& x) const;

  /// Exact minimizer of <dir, .> over U(x) when the body supports it.
  virtual std::optional<LinearMinimum> linear_min(const Vector& /*x*/,
                                                  const Vector& /*dir*/) const {
    return std::nullopt;
  }

  /// Present only when U(x) is not full-dimensional (finite hulls with few
  /// or degenerate generators).
  virtual std::optional<AffineHull> affine_hull(const Vector& /*x*/) const {
    return std::nullopt;
  }
};

/// U(x) = x + {delta : ||delta||_p <= gamma}.
class NormBallAdversary final : public PerturbationSet {
 public:
  NormBallAdversary(Eigen::Index dim, double gamma, NormSpec spec);

  Eigen::Index dim() const override { return dim_; }
  SeparationResult sep(const Vector& x, const Vector& z) const override;
  bool mem(const Vector& x, const Vector& z) const override;
  std::optional<double> offset_radius() const override;
  std::optional<LinearMinimum> linear_min(const Vector& x, const Vector& dir) const override;

  double gamma() const { return gamma_; }
  const NormSpec& spec() const { return spec_; }

 private:
  Eigen::Index dim_;
  double gamma_;
  NormSpec spec_;
};

/// U(x) = {z : A (z - x) <= c}, c >= 0 so x is always a member. An explicit
/// radius bound may be supplied for unbounded-looking descriptions.
class PolytopeAdversary final : public PerturbationSet {
 public:
  PolytopeAdversary(Matrix A, Vector c, std::optional<double> radius = std::nullopt);

  Eigen::Index dim() const override { return A_.cols(); }
  SeparationResult sep(const Vector& x, const Vector& z) const override;
  bool mem(const Vector& x, const Vector& z) const override;
  std::optional<double> offset_radius() const override { return radius_; }

  const Matrix& A() const { return A_; }
  const Vector& c() const { return c_; }

 private:
  Matrix A_;
  Vector c_;
  std::optional<double> radius_;
};

/// U(x) = conv({x + v_j}) for finite offsets v_j; the zero offset must be
/// present. Separation is the nearest-point hyperplane computed by Wolfe's
/// minimum-norm-point method, exact for finite hulls.
class HullAdversary final : public PerturbationSet {
 public:
  explicit HullAdversary(std::vector<Vector> offsets);

  Eigen::Index dim() const override { return dim_; }
  SeparationResult sep(const Vector& x, const Vector& z) const override;
  bool mem(const Vector& x, const Vector& z) const override;
  std::optional<double> offset_radius() const override;
  std::optional<LinearMinimum> linear_min(const Vector& x, const Vector& dir) const override;
  std::optional<AffineHull> affine_hull(const Vector& x) const override;

  const std::vector<Vector>& offsets() const { return offsets_; }

 private:
  std::vector<Vector> offsets_;
  Eigen::Index dim_;
};

/// conv(phi(U(x))) approximated by the hull of deterministically sampled
/// images of the base set. The sampled hull is what all guarantees refer
/// to: a halfspace certified robust here is robust on the sampled images,
/// not necessarily on the full continuous image.
class AffineImageHull final : public PerturbationSet {
 public:
  using FeatureMap = std::function<Vector(const Vector&)>;

  AffineImageHull(std::shared_ptr<const PerturbationSet> base, FeatureMap phi,
                  Eigen::Index image_dim, int sample_count, uint64_t seed);

  Eigen::Index dim() const override { return image_dim_; }
  Eigen::Index anchor_dim() const override { return base_->dim(); }
  SeparationResult sep(const Vector& x, const Vector& z) const override;
  bool mem(const Vector& x, const Vector& z) const override;
  double search_radius(const Vector& x) const override;
  std::optional<LinearMinimum> linear_min(const Vector& x, const Vector& dir) const override;
  std::optional<AffineHull> affine_hull(const Vector& x) const override;

  /// Image-space hull generators for anchor x (phi(x) first). Sampled once
  /// per anchor and memoized; the memo keeps oracle calls pure.
  std::vector<Vector> image_points(const Vector& x) const;

 private:
  std::shared_ptr<const PerturbationSet> base_;
  FeatureMap phi_;
  Eigen::Index image_dim_;
  int sample_count_;
  uint64_t seed_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::vector<double>, std::vector<Vector>> cache_;
};

/// Finite perturbation set -> hull adversary with identical robust
/// separability for any fixed halfspace (both directions).
HullAdversary convexify(const std::vector<Vector>& offsets);

namespace detail {
/// Nearest point of conv(points) to the origin (Wolfe's method).
Vector min_norm_point(const std::vector<Vector>& points, double tol, int max_iter);
}  // namespace detail

}  // namespace robusthalf
