#include <doctest.h>

#include "robusthalf/certify.hpp"
#include "robusthalf/losses.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace robusthalf;
using rht::vec;

TEST_CASE("oracle certification on l2 balls") {
  FeasibilityConfig cfg;
  cfg.precision_bits = 12;
  NormBallAdversary ball(2, 0.5, NormSpec(2.0));

  CertResult robust = cert(ball, Halfspace(vec({1, 0})), {vec({1, 0}), +1}, cfg);
  CHECK(robust.robust);  // margin 0.5 clears the ball radius

  CertResult broken = cert(ball, Halfspace(vec({1, 0})), {vec({0.3, 0}), +1}, cfg);
  REQUIRE(!broken.robust);
  CHECK(broken.counterexample[0] <= 1e-9);  // pushed across the boundary, z ~ (-0.2, 0)
  CHECK(ball.mem(vec({0.3, 0}), broken.counterexample));
}

TEST_CASE("oracle cert agrees with the closed form away from the threshold") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  FeasibilityConfig cfg;
  cfg.precision_bits = 10;
  const std::vector<double> ps{1.0, 2.0, kInfExponent};
  int done = 0;
  while (done < 500) {
    Eigen::Index d = 1 + static_cast<Eigen::Index>(unif(rng) * 2.999);
    double p = ps[static_cast<size_t>(unif(rng) * 3.0) % 3];
    double gamma = 0.1 + 0.6 * unif(rng);
    Vector w = rht::random_gaussian(d, rng);
    if (w.norm() < 0.1) continue;
    Vector x = rht::random_gaussian(d, rng);
    int y = unif(rng) < 0.5 ? 1 : -1;
    NormSpec spec(p);
    NormBallAdversary ball(d, gamma, spec);
    double margin = static_cast<double>(y) * w.dot(x) - gamma * dual_norm(w, spec);
    double resolution = std::ldexp(ball.search_radius(x), -cfg.precision_bits);
    if (std::abs(margin) <= 10.0 * resolution * w.norm()) continue;  // guard band
    ++done;
    CertResult byoracle = cert(ball, Halfspace(w), {x, y}, cfg);
    int loss = robust_loss_lp(Halfspace(w), {x, y}, gamma, spec);
    CHECK(byoracle.robust == (loss == 0));
  }
}

TEST_CASE("fastpath: worst perturbation in closed form") {
  // delta_i = -y gamma sign(w_i) for the sup-norm ball
  CertResult r = cert_fastpath(Halfspace(vec({1, -2})), {vec({1, 1}), +1}, 0.5,
                               NormSpec(kInfExponent));
  REQUIRE(!r.robust);
  CHECK(r.counterexample[0] == doctest::Approx(0.5));
  CHECK(r.counterexample[1] == doctest::Approx(1.5));
  CHECK(vec({1, -2}).dot(r.counterexample) == doctest::Approx(-2.5));

  CertResult ok = cert_fastpath(Halfspace(vec({0, 1})), {vec({0, 2}), +1}, 1.0, NormSpec(2.0));
  CHECK(ok.robust);

  // gamma = 0 degenerates to the plain sign test
  CHECK(cert_fastpath(Halfspace(vec({1, 0})), {vec({1, 0}), +1}, 0.0, NormSpec(2.0)).robust);
  CHECK(!cert_fastpath(Halfspace(vec({1, 0})), {vec({-1, 0}), +1}, 0.0, NormSpec(2.0)).robust);

  CHECK_THROWS_AS(cert_fastpath(Halfspace(vec({1, 0}), 0.3), {vec({1, 0}), +1}, 0.1,
                                NormSpec(2.0)),
                  InvalidInput);
}

TEST_CASE("fastpath and oracle cert agree on lp balls") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  FeasibilityConfig cfg;
  cfg.precision_bits = 10;
  int done = 0;
  while (done < 60) {
    double gamma = 0.2 + 0.5 * unif(rng);
    Vector w = rht::random_gaussian(2, rng);
    if (w.norm() < 0.1) continue;
    Vector x = rht::random_gaussian(2, rng);
    int y = unif(rng) < 0.5 ? 1 : -1;
    NormSpec spec(2.0);
    NormBallAdversary ball(2, gamma, spec);
    double margin = static_cast<double>(y) * w.dot(x) - gamma * dual_norm(w, spec);
    double resolution = std::ldexp(ball.search_radius(x), -cfg.precision_bits);
    if (std::abs(margin) <= 10.0 * resolution * w.norm()) continue;
    ++done;
    CertResult fast = cert_fastpath(Halfspace(w), {x, y}, gamma, spec);
    CertResult slow = cert(ball, Halfspace(w), {x, y}, cfg);
    CHECK(fast.robust == slow.robust);
    if (!fast.robust) {
      CHECK(ball.mem(x, fast.counterexample));
      CHECK(static_cast<double>(y) * w.dot(fast.counterexample) <= 1e-9);
    }
  }
}

TEST_CASE("certify_example dispatches to exact linear minimization") {
  FeasibilityConfig cfg;
  cfg.precision_bits = 12;
  HullAdversary hull({vec({0, 0}), vec({0.4, 0}), vec({0, 0.4})});
  Halfspace h(vec({1, 1}));
  // min over generators of y<w, x+v>: x = (0.5, 0.5) -> min margin 1.0 > 0
  CertResult r1 = certify_example(hull, h, {vec({0.5, 0.5}), +1}, cfg);
  CHECK(r1.robust);
  // flipped label: every generator is a counterexample
  CertResult r2 = certify_example(hull, h, {vec({0.5, 0.5}), -1}, cfg);
  REQUIRE(!r2.robust);
  CHECK(hull.mem(vec({0.5, 0.5}), r2.counterexample));
  // force_oracle routes through the ellipsoid and agrees
  CertResult r3 = certify_example(hull, h, {vec({0.5, 0.5}), +1}, cfg, true);
  CHECK(r3.robust == r1.robust);
  CHECK(r3.oracle_calls > r1.oracle_calls);
}

TEST_CASE("polytope certification goes through the oracle path") {
  FeasibilityConfig cfg;
  cfg.precision_bits = 12;
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  PolytopeAdversary box(A, vec({0.3, 0.3, 0.3, 0.3}), 0.3 * std::sqrt(2.0));
  CertResult safe = certify_example(box, Halfspace(vec({1, 0})), {vec({1, 0}), +1}, cfg);
  CHECK(safe.robust);
  CertResult unsafe = certify_example(box, Halfspace(vec({1, 0})), {vec({0.1, 0}), +1}, cfg);
  REQUIRE(!unsafe.robust);
  CHECK(box.mem(vec({0.1, 0}), unsafe.counterexample));
  CHECK(unsafe.counterexample[0] <= 1e-9);
}

TEST_CASE("flat hulls are certified inside their affine hull") {
  FeasibilityConfig cfg;
  cfg.precision_bits = 14;
  // a segment: zero area, the volume argument alone would never find the
  // misclassified end
  HullAdversary segment({vec({0, 0}), vec({0.8, 0})});
  Halfspace h(vec({-1, 0}));
  CertResult r = cert(segment, h, {vec({0.1, 0.5}), +1}, cfg);
  REQUIRE(!r.robust);  // x + (0.8, 0) has score -0.9
  CHECK(segment.mem(vec({0.1, 0.5}), r.counterexample));
  CHECK(-r.counterexample[0] <= 1e-9);

  // same segment, robust side
  CertResult ok = cert(segment, Halfspace(vec({1, 0})), {vec({0.1, 0.5}), +1}, cfg);
  CHECK(ok.robust);

  // singleton: reduces to the clean 0-1 loss
  HullAdversary point({vec({0, 0})});
  CHECK(cert(point, Halfspace(vec({1, 0})), {vec({0.4, 0}), +1}, cfg).robust);
  CHECK(!cert(point, Halfspace(vec({1, 0})), {vec({-0.4, 0}), +1}, cfg).robust);

  // score constant across the segment's direction space
  HullAdversary vertical({vec({0, 0}), vec({0, 0.5})});
  CHECK(!cert(vertical, Halfspace(vec({1, 0})), {vec({-0.2, 0}), +1}, cfg).robust);
  CHECK(cert(vertical, Halfspace(vec({1, 0})), {vec({0.2, 0}), +1}, cfg).robust);
}

TEST_CASE("dimension mismatch is rejected") {
  FeasibilityConfig cfg;
  NormBallAdversary ball(3, 0.5, NormSpec(2.0));
  CHECK_THROWS_AS(cert(ball, Halfspace(vec({1, 0})), {vec({1, 0, 0}), +1}, cfg), InvalidInput);
}
