#include "robusthalf/types.hpp"

namespace robusthalf {

LabeledExample::LabeledExample(Vector x_, int y_) : x(std::move(x_)), y(y_) {
  require_finite(x, "LabeledExample.x");
  if (y != 1 && y != -1) throw InvalidInput("label must be +1 or -1");
}

Halfspace::Halfspace(Vector w_, double bias_) : w(std::move(w_)), bias(bias_) {
  require_finite(w, "Halfspace.w");
  if (!std::isfinite(bias)) throw InvalidInput("Halfspace.bias must be finite");
  if (w.isZero(0.0)) throw InvalidInput("Halfspace.w must be nonzero");
}

Dataset Dataset::from_examples(const std::vector<LabeledExample>& examples) {
  if (examples.empty()) throw InvalidInput("Dataset: empty example list");
  const Eigen::Index d = examples.front().x.size();
  Dataset out;
  out.X.resize(static_cast<Eigen::Index>(examples.size()), d);
  out.y.resize(static_cast<Eigen::Index>(examples.size()));
  for (size_t i = 0; i < examples.size(); ++i) {
    if (examples[i].x.size() != d) throw InvalidInput("Dataset: inhomogeneous dimensions");
    out.X.row(static_cast<Eigen::Index>(i)) = examples[i].x.transpose();
    out.y[static_cast<Eigen::Index>(i)] = examples[i].y;
  }
  out.validate();
  return out;
}

void Dataset::validate() const {
  if (X.rows() == 0 || X.cols() == 0) throw InvalidInput("Dataset: empty");
  if (y.size() != X.rows()) throw InvalidInput("Dataset: label count mismatch");
  if (!X.allFinite()) throw InvalidInput("Dataset: non-finite feature");
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y[i] != 1 && y[i] != -1) throw InvalidInput("Dataset: label must be +1 or -1");
}

}  // namespace robusthalf
