#include <doctest.h>

#include "robusthalf/losses.hpp"
#include "robusthalf/norms.hpp"
#include "robusthalf/types.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace robusthalf;
using rht::vec;

TEST_CASE("lp norms: closed cases") {
  CHECK(lp_norm(vec({3, 4}), 2.0) == doctest::Approx(5.0));
  CHECK(lp_norm(vec({1, -2, 3}), kInfExponent) == doctest::Approx(3.0));
  // direct evaluation of (sum |v_i|^1.5)^(2/3)
  double expect = std::pow(std::pow(1.0, 1.5) + std::pow(2.0, 1.5) + std::pow(3.0, 1.5), 2.0 / 3.0);
  CHECK(lp_norm(vec({1, -2, 3}), 1.5) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(lp_norm(Vector::Zero(3), 1.5) == 0.0);
  CHECK_THROWS_AS(lp_norm(vec({1.0, std::nan("")}), 2.0), InvalidInput);
  CHECK_THROWS_AS(lp_norm(vec({1.0}), 0.5), InvalidInput);
}

TEST_CASE("dual exponents pair up") {
  CHECK(dual_exponent(1.0) == kInfExponent);
  CHECK(dual_exponent(kInfExponent) == 1.0);
  CHECK(dual_exponent(2.0) == doctest::Approx(2.0));
  CHECK(dual_exponent(1.5) == doctest::Approx(3.0));
  NormSpec s(1.5);
  CHECK(1.0 / s.p() + 1.0 / s.q() == doctest::Approx(1.0));
  CHECK(NormSpec::parse("inf").p() == kInfExponent);
  CHECK(NormSpec::parse("2").p() == 2.0);
  CHECK_THROWS_AS(NormSpec::parse("2x"), InvalidInput);
}

TEST_CASE("dual norm: examples and sampling lower bound") {
  CHECK(dual_norm(vec({3, 4}), NormSpec(2.0)) == doctest::Approx(5.0));
  CHECK(dual_norm(vec({1, -2}), NormSpec(kInfExponent)) == doctest::Approx(3.0));
  CHECK(dual_norm(vec({1, -2}), NormSpec(1.0)) == doctest::Approx(2.0));

  // the p = 1 example against 10^4 random unit-l1 candidates
  {
    std::mt19937_64 rng(5);
    Vector v = vec({1, -2});
    for (int t = 0; t < 10000; ++t) {
      Vector u = rht::random_gaussian(2, rng);
      double n = lp_norm(u, 1.0);
      if (n > 0) u /= n;
      CHECK(u.dot(v) <= 2.0 + 1e-9);
    }
  }

  // sup{<u, v> : ||u||_p <= 1} is never exceeded by sampled u and is
  // attained by the closed-form maximizer
  std::mt19937_64 rng(7);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfExponent}) {
    NormSpec spec(p);
    for (int t = 0; t < 20; ++t) {
      Vector v = rht::random_gaussian(3, rng);
      double dn = dual_norm(v, spec);
      for (int s = 0; s < 500; ++s) {
        Vector u = rht::random_gaussian(3, rng);
        double n = lp_norm(u, p);
        if (n > 0) u /= n;
        CHECK(u.dot(v) <= dn + 1e-9);
      }
      Vector best = dual_norm_maximizer(v, p);
      CHECK(lp_norm(best, p) <= 1.0 + 1e-12);
      CHECK(best.dot(v) == doctest::Approx(dn).epsilon(1e-9));
    }
  }
}

TEST_CASE("margin loss: boundary and scale behavior") {
  NormSpec p2(2.0);
  Halfspace w10(vec({1, 0}));
  CHECK(margin_loss(w10, {vec({1, 0}), +1}, 0.5, p2) == 0);   // margin 1 > 0.5
  CHECK(margin_loss(w10, {vec({0.5, 0}), +1}, 0.5, p2) == 1); // ties are errors
  Halfspace w20(vec({2, 0}));
  CHECK(margin_loss(w20, {vec({0.6, 0}), +1}, 0.5, p2) ==
        margin_loss(w10, {vec({0.6, 0}), +1}, 0.5, p2));
  CHECK_THROWS_AS(margin_loss(Halfspace(vec({1, 0}), 0.5), {vec({1, 0}), +1}, 0.5, p2),
                  InvalidInput);
}

TEST_CASE("robust loss lp: closed form") {
  NormSpec p2(2.0);
  CHECK(robust_loss_lp(Halfspace(vec({1, 0})), {vec({1, 0}), +1}, 0.5, p2) == 0);
  // closed-form worst case: (1-2) - 0.5*(1+2) = -2.5 <= 0, cross-checked by grid
  NormSpec pinf(kInfExponent);
  Halfspace h(vec({1, -2}));
  CHECK(robust_loss_lp(h, {vec({1, 1}), +1}, 0.5, pinf) == 1);
  double grid = rht::grid_min_margin(h.w, vec({1, 1}), +1, 0.5, kInfExponent, 1e-3);
  CHECK(grid == doctest::Approx(-2.5).epsilon(1e-2));
  CHECK((grid <= 0.0) == (robust_loss_lp(h, {vec({1, 1}), +1}, 0.5, pinf) == 1));
  // degenerate adversary: gamma = 0 reduces to the plain 0-1 loss
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    Vector w = rht::random_gaussian(3, rng);
    Vector x = rht::random_gaussian(3, rng);
    int y = (t % 2 == 0) ? 1 : -1;
    int plain = (static_cast<double>(y) * w.dot(x) <= 0.0) ? 1 : 0;
    CHECK(robust_loss_lp(Halfspace(w), {x, y}, 0.0, p2) == plain);
  }
}

TEST_CASE("closed-form robust loss equals the lattice oracle off the guard band") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, kInfExponent};
  int accepted = 0;
  while (accepted < 60) {
    Eigen::Index d = 1 + static_cast<Eigen::Index>(unif(rng) * 3.001);
    double p = ps[static_cast<size_t>(unif(rng) * ps.size()) % ps.size()];
    double gamma = 0.05 + 0.95 * unif(rng);
    Vector w = rht::random_gaussian(d, rng);
    if (w.isZero(0.0)) continue;
    Vector x = rht::random_gaussian(d, rng);
    int y = unif(rng) < 0.5 ? 1 : -1;
    double step = gamma / 8.0;
    NormSpec spec(p);
    double wq = dual_norm(w, spec);
    double margin = static_cast<double>(y) * w.dot(x) - gamma * wq;
    if (std::abs(margin) <= 10.0 * step * wq) continue;  // guard band
    ++accepted;
    int closed = robust_loss_lp(Halfspace(w), {x, y}, gamma, spec);
    int gridded = rht::grid_min_margin(w, x, y, gamma, p, step) <= 0.0 ? 1 : 0;
    CHECK(closed == gridded);
  }
}

TEST_CASE("positive scaling never flips the loss indicators") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    Vector w = rht::random_gaussian(3, rng);
    if (w.isZero(0.0)) continue;
    Vector x = rht::random_gaussian(3, rng);
    int y = unif(rng) < 0.5 ? 1 : -1;
    double gamma = unif(rng);
    double c = 0.01 + 10.0 * unif(rng);
    NormSpec spec(1.0 + 2.0 * unif(rng));
    CHECK(margin_loss(Halfspace(w), {x, y}, gamma, spec) ==
          margin_loss(Halfspace(c * w), {x, y}, gamma, spec));
    CHECK(robust_loss_lp(Halfspace(w), {x, y}, gamma, spec) ==
          robust_loss_lp(Halfspace(c * w), {x, y}, gamma, spec));
  }
}

TEST_CASE("dataset invariants") {
  CHECK_THROWS_AS(Dataset::from_examples({}), InvalidInput);
  std::vector<LabeledExample> bad{{vec({1, 2}), 1}, {vec({1}), -1}};
  CHECK_THROWS_AS(Dataset::from_examples(bad), InvalidInput);
  CHECK_THROWS_AS(LabeledExample(vec({1}), 2), InvalidInput);
  Dataset S = Dataset::from_examples({{vec({1, 0}), 1}, {vec({-1, 0}), -1}});
  CHECK(S.size() == 2);
  CHECK(S.dim() == 2);
}

TEST_CASE("empirical robust risk on a planted pair") {
  Dataset S = Dataset::from_examples({{vec({1, 0}), 1}, {vec({-1, 0}), -1}});
  NormSpec p2(2.0);
  CHECK(empirical_robust_risk(Halfspace(vec({1, 0})), S, 0.5, p2) == 0.0);
  CHECK(empirical_robust_risk(Halfspace(vec({-1, 0})), S, 0.5, p2) == 1.0);
  // pointwise agreement with the lattice oracle on a fixed random dataset
  std::mt19937_64 rng(17);
  std::vector<LabeledExample> examples;
  for (int i = 0; i < 20; ++i)
    examples.push_back({rht::random_gaussian(2, rng), i % 2 == 0 ? 1 : -1});
  Dataset R = Dataset::from_examples(examples);
  Vector w = rht::random_gaussian(2, rng);
  double gamma = 0.3;
  long grid_bad = 0;
  for (int i = 0; i < 20; ++i)
    if (rht::grid_min_margin(w, examples[i].x, examples[i].y, gamma, 2.0, gamma / 50.0) <= 1e-7)
      ++grid_bad;
  double risk = empirical_robust_risk(Halfspace(w), R, gamma, NormSpec(2.0));
  CHECK(risk == doctest::Approx(static_cast<double>(grid_bad) / 20.0));
}
