#include <doctest.h>

#include "robusthalf/datagen.hpp"
#include "robusthalf/surrogate.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace robusthalf;
using rht::vec;

namespace {

/// Independent oracle for the noise-averaged per-point objective: the
/// three-regime closed form in z = sign(<w*, x>) <w, x>.
double decomposed_contribution(double z, double gamma, double eta, double lambda) {
  double base = (eta - lambda) * (z / gamma) + lambda + eta - 2.0 * lambda * eta;
  if (z >= -gamma && z <= gamma)
    return base + (1.0 - eta) * (1.0 - 2.0 * lambda) * (1.0 - z / gamma);
  if (z < -gamma) return base + (1.0 - 2.0 * lambda) * (1.0 - 2.0 * eta - z / gamma);
  return base;
}

double direct_contribution(double z, double eta, const SurrogateSpec& spec) {
  return eta * phi(-z, spec) + (1.0 - eta) * phi(z, spec);
}

}  // namespace

TEST_CASE("derived parameters match both closed forms") {
  SurrogateSpec s(0.5, 0.1, 0.1, 2.0);
  CHECK(s.lambda == doctest::Approx(0.125 / 1.05).epsilon(1e-12));
  CHECK(s.eps_prime == doctest::Approx(0.04 / 2.1).epsilon(1e-12));
  CHECK(s.lambda >= s.eta);
  CHECK(s.lambda <= 0.5);
  // eta = 0 still gives a strictly positive lambda
  SurrogateSpec z(0.5, 0.0, 0.1, 2.0);
  CHECK(z.lambda == doctest::Approx(0.025 / 1.05));
  CHECK(z.lambda > 0.0);
  CHECK_THROWS_AS(SurrogateSpec(0.5, 0.6, 0.1, 2.0), InvalidInput);
  CHECK_THROWS_AS(SurrogateSpec(0.0, 0.1, 0.1, 2.0), InvalidInput);
  CHECK_THROWS_AS(SurrogateSpec(0.5, 0.1, 1.5, 2.0), InvalidInput);
}

TEST_CASE("phi: kink, center, and the negative tail") {
  SurrogateSpec s25(1.0, 0.1, 0.3, 2.0);
  // both branches vanish at s = gamma for any spec
  CHECK(phi(1.0, s25) == doctest::Approx(0.0));
  CHECK(phi(0.0, s25) == doctest::Approx(1.0 - s25.lambda));
  // lambda = 0.25: phi(0) = 0.75 and phi(2) = -0.25 at gamma = 1; realize
  // that slope by solving (eps/2 + eta) / (1 + eps) = 1/4 at eta = 0.13
  SurrogateSpec quarter(1.0, 0.13, 0.48, 2.0);
  CHECK(quarter.lambda == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(phi(0.0, quarter) == doctest::Approx(0.75));
  CHECK(phi(2.0, quarter) == doctest::Approx(-0.25));
  CHECK(phi(1.0, quarter) == doctest::Approx(0.0));
}

TEST_CASE("phi is convex and matches its slopes") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    SurrogateSpec s(0.05 + 0.9 * unif(rng), 0.45 * unif(rng), 0.05 + 0.9 * unif(rng), 2.0);
    double s1 = 4.0 * unif(rng) - 2.0;
    double s2 = 4.0 * unif(rng) - 2.0;
    double a = unif(rng);
    CHECK(phi(a * s1 + (1.0 - a) * s2, s) <= a * phi(s1, s) + (1.0 - a) * phi(s2, s) + 1e-12);
    // slope is a subgradient
    double at = 4.0 * unif(rng) - 2.0;
    double g = phi_slope(at, s);
    CHECK(phi(s1, s) >= phi(at, s) + g * (s1 - at) - 1e-12);
  }
}

TEST_CASE("pointwise decomposition identity over 10^4 draws") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    double gamma = 0.05 + 0.9 * unif(rng);
    double eta = 0.45 * unif(rng);
    SurrogateSpec s(gamma, eta, 0.05 + 0.9 * unif(rng), 2.0);
    double z = 2.0 * unif(rng) - 1.0;
    double direct = direct_contribution(z, eta, s);
    double decomposed = decomposed_contribution(z, gamma, eta, s.lambda);
    CHECK(std::abs(direct - decomposed) <= 1e-9);
  }
}

TEST_CASE("surrogate value: zero weights give 1 - lambda exactly") {
  PlantSpec plant;
  plant.d = 4;
  plant.m = 50;
  plant.gamma = 0.2;
  plant.p = 2.0;
  plant.seed = 5;
  Dataset S = generate(plant);
  SurrogateSpec spec(0.2, 0.1, 0.1, 2.0);
  CHECK(surrogate_value(Vector::Zero(4), S, spec) == doctest::Approx(1.0 - spec.lambda));
}

TEST_CASE("surrogate value rejects norm violations") {
  Dataset S = Dataset::from_examples({{vec({2.0, 0}), +1}});
  SurrogateSpec spec(0.2, 0.1, 0.1, 2.0);
  CHECK_THROWS_AS(surrogate_value(vec({1, 0}), S, spec), InvalidInput);
}

TEST_CASE("optimal-model objective is small: G(w*) <= 2 eta (1 - lambda)") {
  // Monte-Carlo over the planted distribution; 3-sigma slack
  std::mt19937_64 rng(109);
  for (double gamma : {0.1, 0.5}) {
    for (double eta : {0.1, 0.3}) {
      PlantSpec plant;
      plant.d = 6;
      plant.m = 1;
      plant.gamma = gamma;
      plant.p = 2.0;
      plant.eta = eta;
      plant.seed = 13;
      PlantSource source(plant);
      SurrogateSpec spec(gamma, eta, 0.1, 2.0);
      const Vector& wstar = source.w_star();
      const int n = 20000;
      double acc = 0.0, acc2 = 0.0;
      std::mt19937_64 stream(derive_seed(13, "upper-bound-check", 0));
      for (int i = 0; i < n; ++i) {
        LabeledExample ex = source.next(stream);
        double v = phi(static_cast<double>(ex.y) * wstar.dot(ex.x), spec);
        acc += v;
        acc2 += v * v;
      }
      double mean = acc / n;
      double sd = std::sqrt(std::max(0.0, acc2 / n - mean * mean));
      double se = sd / std::sqrt(static_cast<double>(n));
      CHECK(mean <= 2.0 * eta * (1.0 - spec.lambda) + 3.0 * se);
    }
  }
}

TEST_CASE("noiseless planted model has nonpositive objective") {
  // every margin exceeds gamma, so the planted model sits on the negative
  // tail of the surrogate; with eta = 0 the upper bound degenerates to 0
  PlantSpec plant;
  plant.d = 5;
  plant.m = 1;
  plant.gamma = 0.3;
  plant.p = 2.0;
  plant.eta = 0.0;
  plant.seed = 17;
  PlantSource source(plant);
  SurrogateSpec spec(0.3, 0.0, 0.1, 2.0);
  std::mt19937_64 stream(derive_seed(17, "noiseless-upper", 0));
  double acc = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    LabeledExample ex = source.next(stream);
    acc += phi(static_cast<double>(ex.y) * source.w_star().dot(ex.x), spec);
  }
  CHECK(acc / n <= 0.0);
}

TEST_CASE("population lower bound in terms of the half-margin rate") {
  // Monte-Carlo G(w) >= (eta-lambda)/gamma + (1/2)(1-2lambda)(1-eta) P[z <= gamma/2]
  //                     + lambda + eta - 2 lambda eta - 3 SE
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    double gamma = 0.1 + 0.4 * unif(rng);
    double eta = 0.3 * unif(rng);
    PlantSpec plant;
    plant.d = 5;
    plant.m = 1;
    plant.gamma = gamma;
    plant.p = 2.0;
    plant.eta = eta;
    plant.seed = 200 + t;
    PlantSource source(plant);
    SurrogateSpec spec(gamma, eta, 0.1, 2.0);
    Vector w = rht::random_unit(5, rng) * unif(rng);
    const Vector& wstar = source.w_star();

    const int n = 20000;
    double acc = 0.0, acc2 = 0.0;
    long half_margin = 0;
    std::mt19937_64 stream(derive_seed(plant.seed, "lower-bound-check", 0));
    for (int i = 0; i < n; ++i) {
      LabeledExample ex = source.next(stream);
      double z = (wstar.dot(ex.x) > 0 ? 1.0 : -1.0) * w.dot(ex.x);
      acc += direct_contribution(z, eta, spec);
      acc2 += direct_contribution(z, eta, spec) * direct_contribution(z, eta, spec);
      if (z <= gamma / 2.0) ++half_margin;
    }
    double mean = acc / n;
    double sd = std::sqrt(std::max(0.0, acc2 / n - mean * mean));
    double se = sd / std::sqrt(static_cast<double>(n));
    double p_half = static_cast<double>(half_margin) / n;
    double p_se = std::sqrt(p_half * (1.0 - p_half) / n);
    double bound = (eta - spec.lambda) / gamma +
                   0.5 * (1.0 - 2.0 * spec.lambda) * (1.0 - eta) * p_half + spec.lambda + eta -
                   2.0 * spec.lambda * eta;
    CHECK(mean >= bound - 3.0 * (se + 0.5 * (1.0 - 2.0 * spec.lambda) * (1.0 - eta) * p_se));
  }
}

TEST_CASE("suboptimality controls the half-margin error") {
  // any w with measured suboptimality <= eps' keeps the noisy gamma/2 error
  // below eta + 2(eps' + (lambda-eta)(1/gamma - 1)) / (1-2lambda) + 3 SE
  std::mt19937_64 rng(127);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int checked = 0;
  while (checked < 6) {
    double gamma = 0.2 + 0.3 * unif(rng);
    double eta = 0.25 * unif(rng);
    PlantSpec plant;
    plant.d = 4;
    plant.m = 1;
    plant.gamma = gamma;
    plant.p = 2.0;
    plant.eta = eta;
    plant.seed = 300 + checked;
    PlantSource source(plant);
    SurrogateSpec spec(gamma, eta, 0.2, 2.0);
    const Vector& wstar = source.w_star();
    // blend toward w*: candidates with small suboptimality
    Vector w = (0.9 + 0.1 * unif(rng)) * wstar + 0.02 * rht::random_gaussian(4, rng);

    const int n = 30000;
    std::mt19937_64 stream(derive_seed(plant.seed, "subopt-check", 0));
    double g_w = 0.0, g_star = 0.0;
    long noisy_half = 0;
    for (int i = 0; i < n; ++i) {
      LabeledExample ex = source.next(stream);
      double zw = (wstar.dot(ex.x) > 0 ? 1.0 : -1.0) * w.dot(ex.x);
      double zs = (wstar.dot(ex.x) > 0 ? 1.0 : -1.0) * wstar.dot(ex.x);
      g_w += direct_contribution(zw, eta, spec);
      g_star += direct_contribution(zs, eta, spec);
      if (static_cast<double>(ex.y) * w.dot(ex.x) <= gamma / 2.0) ++noisy_half;
    }
    double subopt = (g_w - g_star) / n;
    if (subopt > spec.eps_prime) continue;  // candidate not eps'-suboptimal; resample
    ++checked;
    double err = static_cast<double>(noisy_half) / n;
    double se = std::sqrt(err * (1.0 - err) / n) + 1e-3;
    double bound = eta + 2.0 * (spec.eps_prime + (spec.lambda - eta) * (1.0 / gamma - 1.0)) /
                             (1.0 - 2.0 * spec.lambda);
    CHECK(err <= bound + 3.0 * se);
  }
}

TEST_CASE("link function: clamps and slope") {
  CHECK(link_u(0.0, 0.1, 0.5) == doctest::Approx(0.5));
  CHECK(link_u(-1.0, 0.1, 0.5) == doctest::Approx(0.1));   // s = -2 gamma
  CHECK(link_u(2.0, 0.1, 0.5) == doctest::Approx(0.9));
  CHECK(link_u(0.25, 0.1, 0.5) == doctest::Approx(0.7));   // slope (1-2eta)/(2gamma) = 0.8
  // monotone, Lipschitz with constant (1-2eta)/(2gamma)
  std::mt19937_64 rng(131);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int t = 0; t < 1000; ++t) {
    double a = unif(rng), b = unif(rng);
    if (a > b) std::swap(a, b);
    double ua = link_u(a, 0.2, 0.4), ub = link_u(b, 0.2, 0.4);
    CHECK(ub >= ua - 1e-15);
    CHECK(std::abs(ub - ua) <= (1.0 - 0.4) / 0.8 * (b - a) + 1e-12);
  }
}

TEST_CASE("glm loss: analytic integral and empty integral") {
  // eta=0, gamma=1, y=1, <w,x> = 1: integral of (s/2 + 1/2 - 1) over [0,1]
  CHECK(glm_loss(vec({1.0}), vec({1.0}), 1, 0.0, 1.0) == doctest::Approx(-0.25));
  CHECK(glm_loss(vec({0.0}), vec({1.0}), 1, 0.2, 0.5) == doctest::Approx(0.0));
  CHECK(glm_loss(vec({0.0}), vec({1.0}), 0, 0.2, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("glm gradient matches central finite differences") {
  std::mt19937_64 rng(137);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double h = 1e-5;
  for (int t = 0; t < 100; ++t) {
    Eigen::Index d = 2 + static_cast<Eigen::Index>(unif(rng) * 3);
    Vector w = rht::random_gaussian(d, rng);
    Vector x = rht::random_gaussian(d, rng, 0.4);
    int y01 = unif(rng) < 0.5 ? 0 : 1;
    double eta = 0.3 * unif(rng);
    double gamma = 0.2 + 0.6 * unif(rng);
    Vector g = glm_grad(w, x, y01, eta, gamma);
    for (Eigen::Index j = 0; j < d; ++j) {
      Vector e = Vector::Zero(d);
      e[j] = h;
      double fd = (glm_loss(w + e, x, y01, eta, gamma) - glm_loss(w - e, x, y01, eta, gamma)) /
                  (2.0 * h);
      CHECK(g[j] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("glm curvature never goes negative") {
  // d/ds u(s) >= 0 everywhere, so u'(t) x x^T is PSD
  for (double s : {-10.0, -0.5, -0.1, 0.0, 0.1, 0.5, 10.0}) {
    double h = 1e-6;
    double deriv = (link_u(s + h, 0.2, 0.4) - link_u(s - h, 0.2, 0.4)) / (2.0 * h);
    CHECK(deriv >= -1e-12);
  }
}
