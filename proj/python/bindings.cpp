#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "robusthalf/certify.hpp"
#include "robusthalf/datagen.hpp"
#include "robusthalf/dataset_io.hpp"
#include "robusthalf/losses.hpp"
#include "robusthalf/rcn.hpp"
#include "robusthalf/reductions.hpp"
#include "robusthalf/rerm.hpp"

namespace py = pybind11;
using namespace robusthalf;

namespace {

NormSpec spec_from(py::object p) {
  if (py::isinstance<py::str>(p)) return NormSpec::parse(p.cast<std::string>());
  return NormSpec(p.cast<double>());
}

PlantSpec plant_spec(long d, long m, double gamma, py::object p, double eta, uint64_t seed,
                     std::optional<Vector> w_star, std::optional<double> bias,
                     double margin_slack) {
  PlantSpec spec;
  spec.d = d;
  spec.m = m;
  spec.gamma = gamma;
  spec.p = spec_from(p).p();
  spec.eta = eta;
  spec.seed = seed;
  spec.w_star = std::move(w_star);
  spec.bias = bias;
  spec.margin_slack = margin_slack;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Oracle-driven adversarially robust halfspace learning";

  py::register_exception<InvalidInput>(m, "InvalidInputError", PyExc_ValueError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);

  py::class_<Halfspace>(m, "Halfspace")
      .def(py::init<Vector, double>(), py::arg("w"), py::arg("bias") = 0.0)
      .def_readonly("w", &Halfspace::w)
      .def_readonly("bias", &Halfspace::bias)
      .def("score", &Halfspace::score)
      .def("predict", &Halfspace::predict);

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("X", &Dataset::X)
      .def_property_readonly("y", [](const Dataset& S) { return Eigen::VectorXi(S.y); })
      .def_property_readonly("size", &Dataset::size)
      .def_property_readonly("dim", &Dataset::dim)
      .def_property_readonly("w_star",
                             [](const Dataset& S) -> std::optional<Vector> {
                               if (S.meta && S.meta->w_star) return S.meta->w_star;
                               return std::nullopt;
                             });

  py::class_<PerturbationSet, std::shared_ptr<PerturbationSet>>(m, "PerturbationSet")
      .def_property_readonly("dim", &PerturbationSet::dim)
      .def("sep",
           [](const PerturbationSet& adv, const Vector& x, const Vector& z) {
             SeparationResult s = adv.sep(x, z);
             return py::make_tuple(s.is_inside(),
                                   s.is_inside() ? py::object(py::none())
                                                 : py::object(py::cast(s.hyperplane)));
           })
      .def("mem", &PerturbationSet::mem);

  py::class_<NormBallAdversary, PerturbationSet, std::shared_ptr<NormBallAdversary>>(
      m, "NormBallAdversary")
      .def(py::init([](Eigen::Index dim, double gamma, py::object p) {
             return std::make_shared<NormBallAdversary>(dim, gamma, spec_from(p));
           }),
           py::arg("dim"), py::arg("gamma"), py::arg("p") = 2.0);

  py::class_<HullAdversary, PerturbationSet, std::shared_ptr<HullAdversary>>(m, "HullAdversary")
      .def(py::init<std::vector<Vector>>(), py::arg("offsets"));

  m.def("adversary_from_json", &adversary_from_json_text, py::arg("text"), py::arg("dim"));

  m.def("set_comparison_tolerance", &set_comparison_tolerance, py::arg("tol"));
  m.def("comparison_tolerance", &comparison_tolerance);

  m.def(
      "lp_norm", [](const Vector& v, py::object p) { return lp_norm(v, spec_from(p).p()); },
      py::arg("v"), py::arg("p"));
  m.def(
      "dual_norm", [](const Vector& v, py::object p) { return dual_norm(v, spec_from(p)); },
      py::arg("v"), py::arg("p"));

  m.def(
      "margin_loss",
      [](const Halfspace& h, const Vector& x, int y, double gamma, py::object p) {
        return margin_loss(h, LabeledExample(x, y), gamma, spec_from(p));
      },
      py::arg("h"), py::arg("x"), py::arg("y"), py::arg("gamma"), py::arg("p") = 2.0);
  m.def(
      "robust_loss_lp",
      [](const Halfspace& h, const Vector& x, int y, double gamma, py::object p) {
        return robust_loss_lp(h, LabeledExample(x, y), gamma, spec_from(p));
      },
      py::arg("h"), py::arg("x"), py::arg("y"), py::arg("gamma"), py::arg("p") = 2.0);
  m.def(
      "empirical_robust_risk",
      [](const Halfspace& h, const Dataset& S, double gamma, py::object p) {
        return empirical_robust_risk(h, S, gamma, spec_from(p));
      },
      py::arg("h"), py::arg("dataset"), py::arg("gamma"), py::arg("p") = 2.0);
  m.def(
      "margin_error",
      [](const Halfspace& h, const Dataset& S, double threshold, py::object p, bool normalized) {
        return margin_error(h, S, threshold, spec_from(p), normalized);
      },
      py::arg("h"), py::arg("dataset"), py::arg("threshold"), py::arg("p") = 2.0,
      py::arg("normalized") = true);
  m.def("clean_error", &clean_error, py::arg("h"), py::arg("dataset"));

  m.def(
      "cert_fastpath",
      [](const Halfspace& h, const Vector& x, int y, double gamma, py::object p) {
        CertResult r = cert_fastpath(h, LabeledExample(x, y), gamma, spec_from(p));
        return py::make_tuple(r.robust, r.robust ? py::object(py::none())
                                                 : py::object(py::cast(r.counterexample)));
      },
      py::arg("h"), py::arg("x"), py::arg("y"), py::arg("gamma"), py::arg("p") = 2.0);
  m.def(
      "cert",
      [](const PerturbationSet& adv, const Halfspace& h, const Vector& x, int y, int bits) {
        FeasibilityConfig cfg;
        cfg.precision_bits = bits;
        CertResult r = cert(adv, h, LabeledExample(x, y), cfg);
        return py::make_tuple(r.robust, r.robust ? py::object(py::none())
                                                 : py::object(py::cast(r.counterexample)));
      },
      py::arg("adversary"), py::arg("h"), py::arg("x"), py::arg("y"), py::arg("bits") = 16);

  m.def(
      "generate",
      [](long d, long m_, double gamma, py::object p, double eta, uint64_t seed,
         std::optional<Vector> w_star, std::optional<double> bias, double margin_slack) {
        return generate(plant_spec(d, m_, gamma, p, eta, seed, std::move(w_star), bias,
                                   margin_slack));
      },
      py::arg("d"), py::arg("m"), py::arg("gamma"), py::arg("p") = 2.0, py::arg("eta") = 0.0,
      py::arg("seed") = 0, py::arg("w_star") = std::nullopt, py::arg("bias") = std::nullopt,
      py::arg("margin_slack") = 0.0);

  m.def("write_dataset_csv", &write_dataset_csv, py::arg("dataset"), py::arg("path"));
  m.def("read_dataset_csv", &read_dataset_csv, py::arg("path"));

  py::class_<RermResult>(m, "RermResult")
      .def_property_readonly("feasible", &RermResult::feasible)
      .def_property_readonly("separator",
                             [](const RermResult& r) -> std::optional<Halfspace> {
                               return r.separator;
                             })
      .def_property_readonly("outer_iterations",
                             [](const RermResult& r) { return r.stats.outer_iterations; })
      .def_property_readonly("cert_calls", [](const RermResult& r) { return r.stats.cert_calls; })
      .def_readonly("low_margin_caveat", &RermResult::low_margin_caveat);

  m.def(
      "train_rerm",
      [](const Dataset& S, std::shared_ptr<PerturbationSet> adv, int bits, double tau,
         bool with_bias, bool force_oracle) {
        RermConfig cfg;
        cfg.precision_bits = bits;
        cfg.tau = tau;
        cfg.with_bias = with_bias;
        cfg.force_oracle = force_oracle;
        return rerm(S, *adv, cfg);
      },
      py::arg("dataset"), py::arg("adversary"), py::arg("bits") = 16, py::arg("tau") = 0.0,
      py::arg("with_bias") = false, py::arg("force_oracle") = false);

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_readonly("w", &TrainedModel::w)
      .def_readonly("q", &TrainedModel::q)
      .def_readonly("steps", &TrainedModel::steps)
      .def_readonly("step_size", &TrainedModel::step_size)
      .def_readonly("surrogate_estimate", &TrainedModel::surrogate_estimate);

  m.def(
      "train_rcn",
      [](const Dataset& S, double gamma, double eta, double epsilon, py::object p,
         const std::string& surrogate, long steps, uint64_t seed, int batch) {
        double pv = spec_from(p).p();
        DatasetSampler sampler(S, pv);
        RcnTrainConfig cfg;
        cfg.steps = steps;
        cfg.seed = seed;
        cfg.batch_size = batch;
        if (surrogate == "leaky") return train_leaky(sampler, gamma, eta, epsilon, pv, cfg);
        if (surrogate == "glm") return train_glm(sampler, gamma, eta, epsilon, pv, cfg);
        throw InvalidInput("surrogate must be 'leaky' or 'glm'");
      },
      py::arg("dataset"), py::arg("gamma"), py::arg("eta"), py::arg("epsilon"),
      py::arg("p") = 2.0, py::arg("surrogate") = "leaky", py::arg("steps") = 0,
      py::arg("seed") = 0, py::arg("batch") = 1);

  m.def(
      "phi",
      [](double s, double gamma, double eta, double epsilon, py::object p) {
        return phi(s, SurrogateSpec(gamma, eta, epsilon, spec_from(p).p()));
      },
      py::arg("s"), py::arg("gamma"), py::arg("eta"), py::arg("epsilon"), py::arg("p") = 2.0);
  m.def("link_u", &link_u, py::arg("s"), py::arg("eta"), py::arg("gamma"));

  m.def(
      "approx_sep_from_ball_eval",
      [](const Vector& x, const Vector& z, double body_radius, py::object body_p, double gamma,
         int bits) {
        auto eval = make_lp_ball_evaluator(body_radius, spec_from(body_p));
        NormBallAdversary ball(x.size(), body_radius, spec_from(body_p));
        ReductionConfig rc;
        rc.precision_bits = bits;
        ApproxSepResult s = approx_sep_from_eval(eval, x, z, gamma, ball.search_radius(x), rc);
        return py::make_tuple(s.near_inside, s.near_inside
                                                 ? py::object(py::none())
                                                 : py::object(py::cast(s.hyperplane)));
      },
      py::arg("x"), py::arg("z"), py::arg("body_radius"), py::arg("body_p") = 2.0,
      py::arg("gamma") = 0.1, py::arg("bits") = 16);
}
