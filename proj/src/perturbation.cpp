#include "robusthalf/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace robusthalf {

SeparationResult SeparationResult::cut(Vector c) {
  require_finite(c, "SeparationResult.hyperplane");
  if (c.isZero(0.0)) throw ProtocolError("separation oracle returned a zero hyperplane");
  SeparationResult r;
  r.kind = Kind::Hyperplane;
  r.hyperplane = std::move(c);
  return r;
}

bool PerturbationSet::mem(const Vector& x, const Vector& z) const {
  return sep(x, z).is_inside();
}

double PerturbationSet::search_radius(const Vector& x) const {
  auto r = offset_radius();
  if (!r) throw InvalidInput("adversary has no radius bound; cannot size the search ball");
  return *r + x.norm();
}

// --- NormBallAdversary ------------------------------------------------------

NormBallAdversary::NormBallAdversary(Eigen::Index dim, double gamma, NormSpec spec)
    : dim_(dim), gamma_(gamma), spec_(spec) {
  if (dim < 1) throw InvalidInput("NormBallAdversary: dimension must be >= 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw InvalidInput("NormBallAdversary: gamma must be positive");
}

bool NormBallAdversary::mem(const Vector& x, const Vector& z) const {
  require_same_dim(x, z, "NormBallAdversary::mem");
  return lp_norm(z - x, spec_.p()) <= gamma_ + comparison_tolerance();
}

SeparationResult NormBallAdversary::sep(const Vector& x, const Vector& z) const {
  require_same_dim(x, z, "NormBallAdversary::sep");
  Vector d = z - x;
  if (lp_norm(d, spec_.p()) <= gamma_ + comparison_tolerance()) return SeparationResult::inside();
  return SeparationResult::cut(lp_subgradient(d, spec_.p()));
}

std::optional<double> NormBallAdversary::offset_radius() const {
  // Euclidean radius of the lp ball: gamma * d^(1/2 - 1/p) for p > 2.
  double p = spec_.p();
  double factor = 1.0;
  if (p > 2.0) {
    double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    factor = std::pow(static_cast<double>(dim_), 0.5 - inv_p);
  }
  return gamma_ * factor;
}

std::optional<LinearMinimum> NormBallAdversary::linear_min(const Vector& x,
                                                           const Vector& dir) const {
  require_same_dim(x, dir, "NormBallAdversary::linear_min");
  // min over the ball of <dir, x + delta> = <dir, x> - gamma * ||dir||_q
  Vector u = dual_norm_maximizer(dir, spec_.p());
  LinearMinimum m;
  m.argmin = x - gamma_ * u;
  m.value = dir.dot(m.argmin);
  return m;
}

// --- PolytopeAdversary ------------------------------------------------------

PolytopeAdversary::PolytopeAdversary(Matrix A, Vector c, std::optional<double> radius)
    : A_(std::move(A)), c_(std::move(c)), radius_(radius) {
  if (A_.rows() == 0 || A_.cols() == 0) throw InvalidInput("PolytopeAdversary: empty A");
  if (c_.size() != A_.rows()) throw InvalidInput("PolytopeAdversary: A/c size mismatch");
  if (!A_.allFinite() || !c_.allFinite()) throw InvalidInput("PolytopeAdversary: non-finite data");
  if ((c_.array() < 0.0).any())
    throw InvalidInput("PolytopeAdversary: offsets must be nonnegative so x lies in U(x)");
  for (Eigen::Index i = 0; i < A_.rows(); ++i)
    if (A_.row(i).isZero(0.0)) throw InvalidInput("PolytopeAdversary: zero row in A");
}

bool PolytopeAdversary::mem(const Vector& x, const Vector& z) const {
  require_same_dim(x, z, "PolytopeAdversary::mem");
  Vector r = A_ * (z - x) - c_;
  return r.maxCoeff() <= comparison_tolerance();
}

SeparationResult PolytopeAdversary::sep(const Vector& x, const Vector& z) const {
  require_same_dim(x, z, "PolytopeAdversary::sep");
  Vector r = A_ * (z - x) - c_;
  Eigen::Index worst = 0;
  double v = r.maxCoeff(&worst);
  if (v <= comparison_tolerance()) return SeparationResult::inside();
  return SeparationResult::cut(A_.row(worst).transpose());
}

// --- HullAdversary ----------------------------------------------------------

HullAdversary::HullAdversary(std::vector<Vector> offsets) : offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw InvalidInput("HullAdversary: empty generator set");
  dim_ = offsets_.front().size();
  bool has_zero = false;
  for (const auto& v : offsets_) {
    require_finite(v, "HullAdversary offset");
    if (v.size() != dim_) throw InvalidInput("HullAdversary: inhomogeneous offsets");
    if (v.isZero(0.0)) has_zero = true;
  }
  if (!has_zero) throw InvalidInput("HullAdversary: the zero offset must be present");
}

std::optional<double> HullAdversary::offset_radius() const {
  double r = 0.0;
  for (const auto& v : offsets_) r = std::max(r, v.norm());
  return r;
}

std::optional<LinearMinimum> HullAdversary::linear_min(const Vector& x, const Vector& dir) const {
  require_same_dim(x, dir, "HullAdversary::linear_min");
  // a linear function over a polytope is minimized at a generator
  LinearMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& v : offsets_) {
    double val = dir.dot(x + v);
    if (val < best.value) {
      best.value = val;
      best.argmin = x + v;
    }
  }
  return best;
}

namespace {

/// Orthonormal basis of span{directions}; empty optional when full rank.
std::optional<AffineHull> affine_hull_of(Vector anchor, const std::vector<Vector>& directions,
                                         Eigen::Index dim) {
  Matrix D(dim, static_cast<Eigen::Index>(directions.size()));
  for (size_t j = 0; j < directions.size(); ++j)
    D.col(static_cast<Eigen::Index>(j)) = directions[j];
  Eigen::ColPivHouseholderQR<Matrix> qr(D);
  qr.setThreshold(1e-10);
  Eigen::Index rank = qr.rank();
  if (rank >= dim) return std::nullopt;
  AffineHull h;
  h.anchor = std::move(anchor);
  h.basis = Matrix(qr.householderQ()).leftCols(rank);
  return h;
}

}  // namespace

std::optional<AffineHull> HullAdversary::affine_hull(const Vector& x) const {
  // generators are x + v_j with v_0 = 0, so the offsets span the directions
  return affine_hull_of(x, offsets_, dim_);
}

SeparationResult HullAdversary::sep(const Vector& x, const Vector& z) const {
  require_same_dim(x, z, "HullAdversary::sep");
  std::vector<Vector> shifted;
  shifted.reserve(offsets_.size());
  for (const auto& v : offsets_) shifted.push_back(x + v - z);
  int cap = std::max<int>(100, 10 * static_cast<int>(offsets_.size()) * static_cast<int>(dim_));
  Vector nearest_minus_z = detail::min_norm_point(shifted, 1e-12, cap);
  double dist = nearest_minus_z.norm();
  if (dist <= comparison_tolerance()) return SeparationResult::inside();
  // hyperplane z - nearest: hull lies on its low side
  return SeparationResult::cut(-nearest_minus_z);
}

bool HullAdversary::mem(const Vector& x, const Vector& z) const { return sep(x, z).is_inside(); }

// --- AffineImageHull --------------------------------------------------------

AffineImageHull::AffineImageHull(std::shared_ptr<const PerturbationSet> base, FeatureMap phi,
                                 Eigen::Index image_dim, int sample_count, uint64_t seed)
    : base_(std::move(base)),
      phi_(std::move(phi)),
      image_dim_(image_dim),
      sample_count_(sample_count),
      seed_(seed) {
  if (!base_) throw InvalidInput("AffineImageHull: null base adversary");
  if (!phi_) throw InvalidInput("AffineImageHull: null feature map");
  if (sample_count_ < static_cast<int>(image_dim_) + 1)
    throw InvalidInput("AffineImageHull: sample count must be at least image_dim + 1");
}

std::vector<Vector> AffineImageHull::image_points(const Vector& x) const {
  std::vector<double> key(x.data(), x.data() + x.size());
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }

  std::vector<Vector> pts;
  pts.reserve(static_cast<size_t>(sample_count_) + 1);
  Vector fx = phi_(x);
  if (fx.size() != image_dim_) throw InvalidInput("AffineImageHull: feature map dim mismatch");
  pts.push_back(fx);

  // Deterministic rejection sampling of base-set points inside the search
  // ball around x. Seed depends only on the constructor seed, not on x, so
  // distinct anchors reuse the same offset pattern.
  const Eigen::Index d = base_->dim();
  auto base_radius = base_->offset_radius();
  if (!base_radius)
    throw InvalidInput("AffineImageHull: the base adversary needs an offset radius to sample");
  double r = *base_radius;
  std::mt19937_64 rng(derive_seed(seed_, "affine-image-hull", 0));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int produced = 0;
  int attempts = 0;
  const int max_attempts = sample_count_ * 1000;
  while (produced < sample_count_ && attempts < max_attempts) {
    ++attempts;
    Vector dirv(d);
    for (Eigen::Index i = 0; i < d; ++i) dirv[i] = gauss(rng);
    double n = dirv.norm();
    if (n == 0.0) continue;
    double radius = r * std::pow(unif(rng), 1.0 / static_cast<double>(d));
    Vector cand = x + (radius / n) * dirv;
    if (!base_->mem(x, cand)) continue;
    Vector img = phi_(cand);
    if (img.size() != image_dim_) throw InvalidInput("AffineImageHull: feature map dim mismatch");
    pts.push_back(std::move(img));
    ++produced;
  }
  if (produced < sample_count_)
    throw InvalidInput("AffineImageHull: could not sample enough base-set points");
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(std::move(key), std::move(pts)).first->second;
}

SeparationResult AffineImageHull::sep(const Vector& x, const Vector& z) const {
  if (z.size() != image_dim_) throw InvalidInput("AffineImageHull::sep: image dim mismatch");
  auto pts = image_points(x);
  std::vector<Vector> shifted;
  shifted.reserve(pts.size());
  for (const auto& p : pts) shifted.push_back(p - z);
  int cap = std::max<int>(100, 10 * static_cast<int>(pts.size()) * static_cast<int>(image_dim_));
  Vector nearest_minus_z = detail::min_norm_point(shifted, 1e-12, cap);
  if (nearest_minus_z.norm() <= comparison_tolerance()) return SeparationResult::inside();
  return SeparationResult::cut(-nearest_minus_z);
}

bool AffineImageHull::mem(const Vector& x, const Vector& z) const { return sep(x, z).is_inside(); }

double AffineImageHull::search_radius(const Vector& x) const {
  auto pts = image_points(x);
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, p.norm());
  return r;
}

std::optional<AffineHull> AffineImageHull::affine_hull(const Vector& x) const {
  auto pts = image_points(x);
  std::vector<Vector> directions;
  directions.reserve(pts.size() - 1);
  for (size_t j = 1; j < pts.size(); ++j) directions.push_back(pts[j] - pts[0]);
  return affine_hull_of(pts[0], directions, image_dim_);
}

std::optional<LinearMinimum> AffineImageHull::linear_min(const Vector& x,
                                                         const Vector& dir) const {
  if (dir.size() != image_dim_) throw InvalidInput("AffineImageHull::linear_min: dim mismatch");
  auto pts = image_points(x);
  LinearMinimum best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    double val = dir.dot(p);
    if (val < best.value) {
      best.value = val;
      best.argmin = p;
    }
  }
  return best;
}

HullAdversary convexify(const std::vector<Vector>& offsets) { return HullAdversary(offsets); }

// --- Wolfe minimum-norm-point -----------------------------------------------

namespace detail {
namespace {

/// Affine minimizer of ||P mu|| over sum(mu) = 1 for the active columns.
Vector affine_minimizer(const std::vector<Vector>& pts, const std::vector<int>& active) {
  const int k = static_cast<int>(active.size());
  Matrix M(k + 1, k + 1);
  Vector rhs = Vector::Zero(k + 1);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) M(i, j) = pts[active[i]].dot(pts[active[j]]);
    M(i, k) = 1.0;
    M(k, i) = 1.0;
  }
  M(k, k) = 0.0;
  rhs[k] = 1.0;
  Vector sol = M.fullPivLu().solve(rhs);
  return sol.head(k);
}

}  // namespace

Vector min_norm_point(const std::vector<Vector>& points, double tol, int max_iter) {
  if (points.empty()) throw InvalidInput("min_norm_point: empty point set");
  const Eigen::Index d = points.front().size();

  // start from the point of smallest norm
  int start = 0;
  double best = points[0].squaredNorm();
  for (int j = 1; j < static_cast<int>(points.size()); ++j) {
    double n = points[j].squaredNorm();
    if (n < best) {
      best = n;
      start = j;
    }
  }
  std::vector<int> corral{start};
  Vector lambda = Vector::Ones(1);
  Vector x = points[start];

  double scale = std::max(1.0, std::sqrt(best));
  for (int iter = 0; iter < max_iter; ++iter) {
    // optimality: every point satisfies <x, p> >= ||x||^2 (up to tolerance)
    int next = -1;
    double min_ip = x.squaredNorm() - tol * scale * scale;
    for (int j = 0; j < static_cast<int>(points.size()); ++j) {
      double ip = x.dot(points[j]);
      if (ip < min_ip) {
        min_ip = ip;
        next = j;
      }
    }
    if (next < 0) return x;
    if (std::find(corral.begin(), corral.end(), next) == corral.end()) {
      corral.push_back(next);
      Vector grown(lambda.size() + 1);
      grown << lambda, 0.0;
      lambda = grown;
    }

    // minor cycle: project onto the affine hull, shrink the corral until
    // the affine minimizer is a proper convex combination
    for (;;) {
      Vector mu = affine_minimizer(points, corral);
      if ((mu.array() > 1e-12).all()) {
        lambda = mu;
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < mu.size(); ++i)
        if (mu[i] <= 1e-12 && lambda[i] - mu[i] > 0.0)
          theta = std::min(theta, lambda[i] / (lambda[i] - mu[i]));
      lambda = lambda + theta * (mu - lambda);
      std::vector<int> kept;
      std::vector<double> kept_w;
      for (int i = 0; i < lambda.size(); ++i) {
        if (lambda[i] > 1e-12) {
          kept.push_back(corral[i]);
          kept_w.push_back(lambda[i]);
        }
      }
      if (kept.empty()) {  // numerical corner: keep the heaviest generator
        Eigen::Index imax = 0;
        lambda.maxCoeff(&imax);
        kept.push_back(corral[imax]);
        kept_w.push_back(1.0);
      }
      corral = kept;
      lambda = Eigen::Map<Vector>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
      lambda /= lambda.sum();
    }

    x = Vector::Zero(d);
    for (int i = 0; i < static_cast<int>(corral.size()); ++i) x += lambda[i] * points[corral[i]];
  }
  return x;  // iteration cap hit; x is the best certified point so far
}

}  // namespace detail
}  // namespace robusthalf
