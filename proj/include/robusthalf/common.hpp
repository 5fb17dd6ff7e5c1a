#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace robusthalf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when caller-supplied data violates a precondition (non-finite
/// coordinates, bad labels, dimension mismatch, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an oracle breaks its contract (zero hyperplane, membership
/// answers inconsistent with convexity, ...).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when synthetic data generation cannot satisfy its certificates
/// (rejection sampling exhausted).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an iterative procedure produced non-finite arithmetic.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, long iteration)
      : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  long iteration() const { return iteration_; }

 private:
  long iteration_;
};

/// Global absolute comparison tolerance. Single knob shared by membership
/// tests, counterexample re-verification and boundary checks.
double comparison_tolerance();
void set_comparison_tolerance(double tol);

inline bool is_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Vector& v, std::string_view what);
void require_same_dim(const Vector& a, const Vector& b, std::string_view what);

// --- deterministic seed derivation -----------------------------------------
//
// All randomness in the library flows from one user seed through
// derive_seed(seed, tag, index): tag names the purpose ("gen", "flip",
// "smd", ...), index partitions streams (example index, replicate index).
// Same scheme regardless of parallelism level.

uint64_t splitmix64(uint64_t x);
uint64_t derive_seed(uint64_t seed, std::string_view tag, uint64_t index);

}  // namespace robusthalf
