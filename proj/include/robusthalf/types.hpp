#pragma once

#include "robusthalf/common.hpp"
#include "robusthalf/norms.hpp"

#include <optional>
#include <vector>

namespace robusthalf {

struct LabeledExample {
  Vector x;
  int y = 1;  // +1 or -1

  LabeledExample() = default;
  LabeledExample(Vector x_, int y_);
};

/// Linear classifier z -> sign(<w, z> + bias). w must be nonzero.
struct Halfspace {
  Vector w;
  double bias = 0.0;

  Halfspace() = default;
  explicit Halfspace(Vector w_, double bias_ = 0.0);

  double score(const Vector& x) const { return w.dot(x) + bias; }
  int predict(const Vector& x) const { return score(x) >= 0.0 ? 1 : -1; }
};

/// Optional provenance of a synthetic dataset.
struct DatasetMetadata {
  std::optional<uint64_t> seed;
  std::optional<double> gamma;
  std::optional<double> eta;
  std::optional<double> p;
  std::optional<Vector> w_star;
  std::optional<double> bias;
};

/// Row-major sample matrix plus labels; homogeneous dimension by
/// construction, nonempty enforced on build.
struct Dataset {
  Matrix X;           // m x d
  Eigen::VectorXi y;  // entries in {-1, +1}
  std::optional<DatasetMetadata> meta;

  Eigen::Index size() const { return X.rows(); }
  Eigen::Index dim() const { return X.cols(); }
  LabeledExample example(Eigen::Index i) const { return {X.row(i).transpose(), y[i]}; }

  static Dataset from_examples(const std::vector<LabeledExample>& examples);
  void validate() const;
};

}  // namespace robusthalf
