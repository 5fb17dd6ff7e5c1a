#include <doctest.h>

#include "robusthalf/datagen.hpp"
#include "robusthalf/losses.hpp"
#include "robusthalf/rcn.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace robusthalf;
using rht::vec;

namespace {

double holdout_margin_error(const TrainedModel& m, const PlantSpec& plant, const Vector& w_star,
                            double threshold, int n, uint64_t tag) {
  PlantSpec hold = plant;
  hold.m = n;
  hold.seed = derive_seed(plant.seed, "holdout", tag);
  hold.w_star = w_star;  // same distribution, fresh draws
  Dataset H = generate(hold);
  return margin_error(Halfspace(m.w), H, threshold, NormSpec(plant.p), false);
}

}  // namespace

TEST_CASE("noiseless leaky training drives the half-margin error down") {
  PlantSpec plant;
  plant.d = 6;
  plant.m = 1;
  plant.gamma = 0.25;
  plant.p = 2.0;
  plant.eta = 0.0;
  plant.seed = 41;
  PlantSource source(plant);
  RcnTrainConfig cfg;
  cfg.steps = 60000;
  cfg.seed = 7;
  TrainedModel m = train_leaky(source, 0.25, 0.0, 0.1, 2.0, cfg);
  CHECK(lp_norm(m.w, 2.0) <= 1.0 + 1e-9);
  CHECK(holdout_margin_error(m, plant, source.w_star(), 0.125, 20000, 1) <= 0.1);
}

TEST_CASE("noisy leaky training stays within eta + epsilon (loose check)") {
  PlantSpec plant;
  plant.d = 5;
  plant.m = 1;
  plant.gamma = 0.3;
  plant.p = kInfExponent;
  plant.eta = 0.2;
  plant.seed = 43;
  PlantSource source(plant);
  RcnTrainConfig cfg;
  cfg.steps = 80000;
  cfg.seed = 11;
  TrainedModel m = train_leaky(source, 0.3, 0.2, 0.15, kInfExponent, cfg);
  CHECK(lp_norm(m.w, 1.0) <= 1.0 + 1e-9);  // q = 1 for sup-norm data
  CHECK(holdout_margin_error(m, plant, source.w_star(), 0.15, 20000, 2) <= 0.2 + 0.15 + 0.05);
}

TEST_CASE("glm training matches the same bound") {
  PlantSpec plant;
  plant.d = 5;
  plant.m = 1;
  plant.gamma = 0.3;
  plant.p = 2.0;
  plant.eta = 0.15;
  plant.seed = 47;
  PlantSource source(plant);
  RcnTrainConfig cfg;
  cfg.steps = 80000;
  cfg.seed = 13;
  TrainedModel m = train_glm(source, 0.3, 0.15, 0.15, 2.0, cfg);
  CHECK(lp_norm(m.w, 2.0) <= 1.0 + 1e-9);
  CHECK(holdout_margin_error(m, plant, source.w_star(), 0.15, 20000, 3) <= 0.15 + 0.15 + 0.05);
}

TEST_CASE("leaky and glm land close to each other on ten seeded instances") {
  for (uint64_t seed = 53; seed < 63; ++seed) {
    PlantSpec plant;
    plant.d = 4;
    plant.m = 1;
    plant.gamma = 0.3;
    plant.p = 2.0;
    plant.eta = 0.1;
    plant.seed = seed;
    PlantSource a(plant), b(plant);
    RcnTrainConfig cfg;
    cfg.steps = 60000;
    cfg.seed = 17;
    TrainedModel ml = train_leaky(a, 0.3, 0.1, 0.15, 2.0, cfg);
    TrainedModel mg = train_glm(b, 0.3, 0.1, 0.15, 2.0, cfg);
    double el = holdout_margin_error(ml, plant, a.w_star(), 0.15, 20000, 4);
    double eg = holdout_margin_error(mg, plant, b.w_star(), 0.15, 20000, 4);
    CHECK(std::abs(el - eg) <= 0.03);
  }
}

TEST_CASE("dataset sampler validates the norm bound and resamples uniformly") {
  Dataset bad = Dataset::from_examples({{vec({2.0, 0}), +1}});
  CHECK_THROWS_AS(DatasetSampler(bad, 2.0), InvalidInput);

  Dataset ok = Dataset::from_examples({{vec({0.5, 0}), +1}, {vec({-0.5, 0}), -1}});
  DatasetSampler sampler(ok, 2.0);
  std::mt19937_64 rng(59);
  int plus = 0;
  for (int t = 0; t < 4000; ++t)
    if (sampler.next(rng).y > 0) ++plus;
  CHECK(plus > 1700);
  CHECK(plus < 2300);
}

TEST_CASE("training from a finite dataset with replacement works end to end") {
  PlantSpec plant;
  plant.d = 4;
  plant.m = 4000;
  plant.gamma = 0.3;
  plant.p = 2.0;
  plant.eta = 0.1;
  plant.seed = 61;
  Dataset S = generate(plant);
  DatasetSampler sampler(S, 2.0);
  RcnTrainConfig cfg;
  cfg.steps = 40000;
  cfg.seed = 19;
  TrainedModel m = train_leaky(sampler, 0.3, 0.1, 0.2, 2.0, cfg);
  CHECK(margin_error(Halfspace(m.w), S, 0.15, NormSpec(2.0), false) <= 0.1 + 0.2 + 0.05);
}

TEST_CASE("derived lambda respects the eta <= lambda <= 1/2 corridor") {
  // argument validation surfaces as config errors
  PlantSpec plant;
  plant.d = 2;
  plant.m = 1;
  plant.gamma = 0.2;
  plant.p = 2.0;
  plant.seed = 1;
  PlantSource source(plant);
  RcnTrainConfig cfg;
  cfg.steps = 10;
  CHECK_THROWS_AS(train_leaky(source, 0.2, 0.5, 0.1, 2.0, cfg), InvalidInput);
  CHECK_THROWS_AS(train_leaky(source, 1.5, 0.1, 0.1, 2.0, cfg), InvalidInput);
  CHECK_THROWS_AS(train_glm(source, 0.2, 0.1, 1.5, 2.0, cfg), InvalidInput);
}

TEST_CASE("deterministic: same seed, same model") {
  PlantSpec plant;
  plant.d = 3;
  plant.m = 1;
  plant.gamma = 0.3;
  plant.p = 2.0;
  plant.eta = 0.1;
  plant.seed = 67;
  PlantSource a(plant), b(plant);
  RcnTrainConfig cfg;
  cfg.steps = 5000;
  cfg.seed = 23;
  TrainedModel m1 = train_leaky(a, 0.3, 0.1, 0.15, 2.0, cfg);
  TrainedModel m2 = train_leaky(b, 0.3, 0.1, 0.15, 2.0, cfg);
  CHECK((m1.w - m2.w).cwiseAbs().maxCoeff() == 0.0);
}
