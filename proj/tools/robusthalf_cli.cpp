// robusthalf command line: dataset generation, robust training,
// certification, evaluation, oracle-reduction demos and parameter sweeps.
//
// Exit codes: 0 success, 2 configuration error, 3 generation error,
// 4 infeasible training instance, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include "robusthalf/certify.hpp"
#include "robusthalf/datagen.hpp"
#include "robusthalf/dataset_io.hpp"
#include "robusthalf/losses.hpp"
#include "robusthalf/rcn.hpp"
#include "robusthalf/reductions.hpp"
#include "robusthalf/rerm.hpp"
#include "robusthalf/run_record.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace robusthalf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGeneration = 3;
constexpr int kExitInfeasible = 4;

struct CommonOpts {
  bool json_only = false;
  std::string record_path;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_flag("--json", c.json_only, "restrict stdout to machine output");
  cmd->add_option("--record", c.record_path, "also write the run record to this path");
}

void emit_record(const RunRecord& rec, const CommonOpts& c, bool to_stdout = true) {
  if (!c.record_path.empty()) rec.write(c.record_path);
  if (to_stdout) std::cout << rec.to_json_text() << "\n";
}

void note(const CommonOpts& c, const std::string& msg) {
  (void)c;
  std::cerr << msg << "\n";
}

std::shared_ptr<PerturbationSet> load_adversary(const std::string& text_or_path,
                                                Eigen::Index dim) {
  std::string t = text_or_path;
  if (!t.empty() && t.front() == '{') return adversary_from_json_text(t, dim);
  return adversary_from_json_file(t, dim);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (cell == "inf")
      out.push_back(kInfExponent);
    else
      out.push_back(std::stod(cell));
  }
  if (out.empty()) throw InvalidInput("empty list: " + csv);
  return out;
}

std::string p_token(double p) { return NormSpec(p).p_token(); }

/// Merge a JSON config file into subcommand option defaults; explicit flags
/// always win because defaults are applied before parsing.
void apply_config_defaults(CLI::App& app, int argc, char** argv) {
  std::string cfg_path;
  for (int i = 1; i + 1 <= argc - 1; ++i)
    if (std::string(argv[i]) == "--config") cfg_path = argv[i + 1];
  if (cfg_path.empty()) return;
  std::ifstream in(cfg_path);
  if (!in) throw InvalidInput("cannot open config file: " + cfg_path);
  json j = json::parse(in);
  if (!j.is_object()) throw InvalidInput("config file must hold a JSON object");
  for (auto* sub : app.get_subcommands({})) {
    for (const auto& [key, value] : j.items()) {
      CLI::Option* opt = sub->get_option_no_throw("--" + key);
      if (!opt) continue;
      std::string text = value.is_string() ? value.get<std::string>() : value.dump();
      opt->default_val(text);
    }
  }
}

// --- gen ---------------------------------------------------------------------

struct GenOpts {
  CommonOpts common;
  long d = 2, m = 100;
  double gamma = 0.1, eta = 0.0, margin_slack = 0.0;
  std::string p = "2";
  uint64_t seed = 0;
  std::string out_dir;
  double bias = 0.0;
  bool with_bias = false;
  std::string w_star_csv;
};

int run_gen(const GenOpts& o) {
  PlantSpec spec;
  spec.d = o.d;
  spec.m = o.m;
  spec.gamma = o.gamma;
  spec.eta = o.eta;
  spec.p = NormSpec::parse(o.p).p();
  spec.seed = o.seed;
  spec.margin_slack = o.margin_slack;
  if (o.with_bias) spec.bias = o.bias;
  if (!o.w_star_csv.empty()) {
    auto vals = parse_list(o.w_star_csv);
    spec.w_star = Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
  }

  Dataset S = generate(spec);
  fs::path dir(o.out_dir);
  fs::create_directories(dir);
  fs::path csv = dir / "dataset.csv";
  fs::path meta = dir / "dataset.meta.json";
  write_dataset_csv(S, csv);
  write_metadata_json(*S.meta, meta);

  RunRecord rec;
  rec.command = "gen";
  rec.seed = o.seed;
  rec.config = {{"d", o.d},          {"m", o.m},
                {"gamma", o.gamma},  {"eta", o.eta},
                {"p", o.p},          {"margin_slack", o.margin_slack},
                {"bias", o.bias},    {"with_bias", o.with_bias}};
  rec.metrics = {{"rows", static_cast<long>(S.size())},
                 {"dim", static_cast<long>(S.dim())}};
  rec.artifacts = {{"dataset", csv.string()}, {"metadata", meta.string()}};
  emit_record(rec, o.common);
  note(o.common, "wrote " + csv.string());
  return kExitOk;
}

// --- train-rerm ----------------------------------------------------------------

struct TrainRermOpts {
  CommonOpts common;
  std::string data, adversary, out_model;
  int bits = 16;
  double tau = 0.0;
  bool with_bias = false;
  bool force_oracle = false;
};

int run_train_rerm(const TrainRermOpts& o) {
  Dataset S = read_dataset_csv(o.data);
  auto adv = load_adversary(o.adversary, S.dim());

  RermConfig cfg;
  cfg.precision_bits = o.bits;
  cfg.tau = o.tau;
  cfg.with_bias = o.with_bias;
  cfg.force_oracle = o.force_oracle;
  RermResult res = rerm(S, *adv, cfg);

  RunRecord rec;
  rec.command = "train-rerm";
  rec.config = {{"data", o.data},
                {"adversary", o.adversary},
                {"b", static_cast<long>(o.bits)},
                {"tau", o.tau},
                {"bias", o.with_bias},
                {"force_oracle", o.force_oracle}};
  rec.metrics = {{"outer_iterations", res.stats.outer_iterations},
                 {"cert_calls", res.stats.cert_calls},
                 {"oracle_calls", res.stats.oracle_calls},
                 {"wall_seconds", res.stats.wall_seconds},
                 {"feasible", res.feasible()}};

  if (!res.feasible()) {
    rec.metrics["low_margin_caveat"] = res.low_margin_caveat;
    emit_record(rec, o.common);
    note(o.common,
         "infeasible: no margin-tau robust separator in the unit ball" +
             std::string(res.low_margin_caveat
                             ? " (margins within 10*tau of the boundary; the tau relaxation "
                               "may explain the verdict)"
                             : ""));
    return kExitInfeasible;
  }

  FeasibilityConfig fc;
  fc.precision_bits = o.bits;
  double risk = empirical_robust_risk(*res.separator, S, *adv, fc);
  rec.metrics["empirical_robust_risk"] = risk;

  ModelFile model{*res.separator, 2.0};
  if (!o.out_model.empty()) {
    write_model_json(model, o.out_model);
    rec.artifacts["model"] = o.out_model;
  }
  emit_record(rec, o.common);
  note(o.common, "separator found; empirical robust risk " + std::to_string(risk));
  return kExitOk;
}

// --- train-rcn -----------------------------------------------------------------

struct TrainRcnOpts {
  CommonOpts common;
  std::string data, surrogate = "leaky", out_model;
  double gamma = 0.1, eta = 0.0, epsilon = 0.1;
  std::string p = "2";
  long steps = 0;
  int batch = 1;
  uint64_t seed = 0;
  bool last_iterate = false;
  double margin_fraction = 0.5;
};

int run_train_rcn(const TrainRcnOpts& o) {
  if (o.surrogate != "leaky" && o.surrogate != "glm")
    throw InvalidInput("surrogate must be 'leaky' or 'glm'");
  double p = NormSpec::parse(o.p).p();
  Dataset S = read_dataset_csv(o.data);
  DatasetSampler sampler(S, p);

  RcnTrainConfig cfg;
  cfg.steps = o.steps;
  cfg.batch_size = o.batch;
  cfg.seed = derive_seed(o.seed, "train-rcn", 0);
  cfg.average_iterates = !o.last_iterate;
  cfg.margin_fraction = o.margin_fraction;

  TrainedModel m = o.surrogate == "leaky"
                       ? train_leaky(sampler, o.gamma, o.eta, o.epsilon, p, cfg)
                       : train_glm(sampler, o.gamma, o.eta, o.epsilon, p, cfg);

  Halfspace h(m.w, 0.0);
  NormSpec spec(p);
  double thr = o.gamma * o.margin_fraction;

  RunRecord rec;
  rec.command = "train-rcn";
  rec.seed = o.seed;
  rec.config = {{"data", o.data},       {"surrogate", o.surrogate},
                {"gamma", o.gamma},     {"eta", o.eta},
                {"epsilon", o.epsilon}, {"p", o.p},
                {"T", m.steps},         {"batch", static_cast<long>(o.batch)},
                {"last_iterate", o.last_iterate}, {"margin_fraction", o.margin_fraction}};
  rec.metrics = {{"steps", m.steps},
                 {"step_size", m.step_size},
                 {"surrogate_estimate", m.surrogate_estimate},
                 {"train_margin_error_gamma", margin_error(h, S, o.gamma, spec, false)},
                 {"train_margin_error_eval", margin_error(h, S, thr, spec, false)},
                 {"train_clean_error", clean_error(h, S)},
                 {"w_dual_norm", lp_norm(m.w, m.q)}};

  ModelFile model{h, m.q};
  if (!o.out_model.empty()) {
    write_model_json(model, o.out_model);
    rec.artifacts["model"] = o.out_model;
  }
  emit_record(rec, o.common);
  note(o.common, "trained " + o.surrogate + " model over " + std::to_string(m.steps) + " steps");
  return kExitOk;
}

// --- eval ----------------------------------------------------------------------

struct EvalOpts {
  CommonOpts common;
  std::string model, data, adversary;
  double gamma = 0.0;  // margin thresholds; 0 = take from an lp_ball adversary
  int bits = 16;
};

int run_eval(const EvalOpts& o) {
  Dataset S = read_dataset_csv(o.data);
  ModelFile m = read_model_json(o.model);
  auto adv = load_adversary(o.adversary, S.dim());

  double gamma = o.gamma;
  NormSpec spec(m.q ? dual_exponent(*m.q) : 2.0);
  if (auto* ball = dynamic_cast<const NormBallAdversary*>(adv.get())) {
    if (gamma == 0.0) gamma = ball->gamma();
    spec = ball->spec();
  }
  if (gamma == 0.0) throw InvalidInput("eval: supply --gamma or an lp_ball adversary");

  FeasibilityConfig fc;
  fc.precision_bits = o.bits;

  RunRecord rec;
  rec.command = "eval";
  rec.config = {{"model", o.model}, {"data", o.data}, {"adversary", o.adversary},
                {"gamma", gamma},   {"b", static_cast<long>(o.bits)}};
  rec.metrics = {{"empirical_robust_risk", empirical_robust_risk(m.h, S, *adv, fc)},
                 {"margin_error_gamma", margin_error(m.h, S, gamma, spec, true)},
                 {"margin_error_half_gamma", margin_error(m.h, S, gamma / 2.0, spec, true)},
                 {"clean_error", clean_error(m.h, S)},
                 {"rows", static_cast<long>(S.size())}};
  emit_record(rec, o.common);
  return kExitOk;
}

// --- certify -------------------------------------------------------------------

struct CertifyOpts {
  CommonOpts common;
  std::string model, data, adversary, out;
  int bits = 16;
  bool force_oracle = false;
};

int run_certify(const CertifyOpts& o) {
  Dataset S = read_dataset_csv(o.data);
  ModelFile m = read_model_json(o.model);
  auto adv = load_adversary(o.adversary, S.dim());

  FeasibilityConfig fc;
  fc.precision_bits = o.bits;

  std::ofstream file_out;
  std::ostream* out = &std::cout;
  if (!o.out.empty()) {
    file_out.open(o.out);
    if (!file_out) throw InvalidInput("cannot open " + o.out);
    out = &file_out;
  }

  long robust_count = 0;
  for (Eigen::Index i = 0; i < S.size(); ++i) {
    CertResult cr = certify_example(*adv, m.h, S.example(i), fc, o.force_oracle);
    json line;
    line["index"] = i;
    line["robust"] = cr.robust;
    if (!cr.robust) {
      json arr = json::array();
      for (Eigen::Index j = 0; j < cr.counterexample.size(); ++j)
        arr.push_back(cr.counterexample[j]);
      line["counterexample"] = arr;
      line["score"] = static_cast<double>(S.y[i]) * m.h.score(cr.counterexample);
    } else {
      ++robust_count;
    }
    (*out) << line.dump() << "\n";
  }

  RunRecord rec;
  rec.command = "certify";
  rec.config = {{"model", o.model},
                {"data", o.data},
                {"adversary", o.adversary},
                {"b", static_cast<long>(o.bits)},
                {"force_oracle", o.force_oracle}};
  rec.metrics = {{"robust", robust_count},
                 {"counterexamples", static_cast<long>(S.size()) - robust_count},
                 {"empirical_robust_risk",
                  1.0 - static_cast<double>(robust_count) / static_cast<double>(S.size())}};
  if (!o.out.empty()) rec.artifacts["results"] = o.out;
  if (!o.common.record_path.empty()) rec.write(o.common.record_path);
  // the record closes the stream as one more JSON line
  std::cout << rec.to_json_line() << "\n";
  return kExitOk;
}

// --- reduce --------------------------------------------------------------------

struct ReduceOpts {
  CommonOpts common;
  long d = 2;
  std::string p = "2";
  double radius = 1.0;   // body: lp ball of this radius at the origin
  double gamma = 0.1;    // approximation slack of the separation oracle
  long queries = 20;
  uint64_t seed = 0;
  int bits = 16;
};

int run_reduce(const ReduceOpts& o) {
  NormSpec spec = NormSpec::parse(o.p);
  auto eval = make_lp_ball_evaluator(o.radius, spec);
  Vector x = Vector::Zero(o.d);
  NormBallAdversary ball(o.d, o.radius, spec);
  const double R = ball.search_radius(x);

  ReductionConfig rc;
  rc.precision_bits = o.bits;

  std::mt19937_64 rng(derive_seed(o.seed, "reduce", 0));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  long hyperplanes = 0, near_inside = 0, evals = 0;
  double worst_violation = -1e300;
  for (long i = 0; i < o.queries; ++i) {
    Vector dir(o.d);
    for (Eigen::Index j = 0; j < o.d; ++j) dir[j] = gauss(rng);
    dir.normalize();
    double dist = unif(rng) * 3.0 * o.radius;  // inside and outside alike
    Vector z = dir * dist;

    ApproxSepResult s = approx_sep_from_eval(eval, x, z, o.gamma, R, rc);
    evals += s.eval_calls;
    json line;
    line["index"] = i;
    line["distance_to_center"] = dist;
    line["near_inside"] = s.near_inside;
    if (!s.near_inside) {
      ++hyperplanes;
      // soundness audit against sampled body points
      double max_ip = -1e300;
      for (int t = 0; t < 2000; ++t) {
        Vector u = sample_lp_ball(o.d, spec.p(), rng) * o.radius;
        max_ip = std::max(max_ip, s.hyperplane.dot(u));
      }
      double violation = max_ip - s.hyperplane.dot(z);
      worst_violation = std::max(worst_violation, violation);
      line["max_body_ip_minus_query_ip"] = violation;
    } else {
      ++near_inside;
    }
    line["eval_calls"] = s.eval_calls;
    std::cout << line.dump() << "\n";
  }

  RunRecord rec;
  rec.command = "reduce";
  rec.seed = o.seed;
  rec.config = {{"d", o.d},         {"p", o.p},   {"radius", o.radius},
                {"gamma", o.gamma}, {"queries", o.queries}, {"b", static_cast<long>(o.bits)}};
  rec.metrics = {{"hyperplanes", hyperplanes},
                 {"near_inside", near_inside},
                 {"eval_calls", evals},
                 {"worst_soundness_violation", worst_violation}};
  if (!o.common.record_path.empty()) rec.write(o.common.record_path);
  std::cout << rec.to_json_line() << "\n";
  return kExitOk;
}

// --- sweep ---------------------------------------------------------------------

struct SweepOpts {
  CommonOpts common;
  std::string etas = "0.1", gammas = "0.2", epsilons = "0.1", ps = "2";
  std::string surrogate = "leaky";
  long d = 10, m = 20000, holdout = 20000;
  int reps = 1;
  long steps = 0;
  uint64_t seed = 0;
  std::string out;
};

int run_sweep(const SweepOpts& o) {
  auto etas = parse_list(o.etas);
  auto gammas = parse_list(o.gammas);
  auto epsilons = parse_list(o.epsilons);
  auto ps = parse_list(o.ps);

  std::ofstream csv(o.out);
  if (!csv) throw InvalidInput("cannot open " + o.out);
  csv << "cell,rep,cell_seed,surrogate,d,m,eta,gamma,epsilon,p,steps,step_size,"
         "holdout_margin_error_half_gamma,holdout_clean_error,train_margin_error_half_gamma,"
         "bound_eta_plus_epsilon\n";

  long cell_index = 0, rows = 0;
  for (double eta : etas)
    for (double gamma : gammas)
      for (double eps : epsilons)
        for (double p : ps) {
          for (int rep = 0; rep < o.reps; ++rep, ++rows) {
            uint64_t cell_seed = derive_seed(o.seed, "sweep-cell", 1000 * cell_index + rep);

            PlantSpec ps_train;
            ps_train.d = o.d;
            ps_train.m = o.m;
            ps_train.gamma = gamma;
            ps_train.p = p;
            ps_train.eta = eta;
            ps_train.seed = cell_seed;
            Dataset train = generate(ps_train);

            DatasetSampler sampler(train, p);
            RcnTrainConfig cfg;
            cfg.steps = o.steps;
            cfg.seed = derive_seed(cell_seed, "train-rcn", 0);
            TrainedModel model = o.surrogate == "glm"
                                     ? train_glm(sampler, gamma, eta, eps, p, cfg)
                                     : train_leaky(sampler, gamma, eta, eps, p, cfg);

            PlantSpec ps_hold = ps_train;
            ps_hold.m = o.holdout;
            ps_hold.seed = derive_seed(cell_seed, "holdout", 0);
            ps_hold.w_star = *train.meta->w_star;  // same plant, fresh draws
            Dataset hold = generate(ps_hold);

            Halfspace h(model.w, 0.0);
            NormSpec spec(p);
            double he = margin_error(h, hold, gamma / 2.0, spec, false);
            double te = margin_error(h, train, gamma / 2.0, spec, false);
            csv << cell_index << "," << rep << "," << cell_seed << "," << o.surrogate << ","
                << o.d << "," << o.m << "," << eta << "," << gamma << "," << eps << ","
                << p_token(p) << "," << model.steps << "," << model.step_size << "," << he << ","
                << clean_error(h, hold) << "," << te << "," << (eta + eps) << "\n";
          }
          ++cell_index;
        }

  RunRecord rec;
  rec.command = "sweep";
  rec.seed = o.seed;
  rec.config = {{"etas", o.etas},     {"gammas", o.gammas}, {"epsilons", o.epsilons},
                {"ps", o.ps},         {"surrogate", o.surrogate}, {"d", o.d},
                {"m", o.m},           {"holdout", o.holdout},     {"reps", static_cast<long>(o.reps)},
                {"steps", o.steps}};
  rec.metrics = {{"cells", cell_index}, {"rows", rows}};
  rec.artifacts = {{"csv", o.out}};
  emit_record(rec, o.common);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oracle-driven adversarially robust halfspace learning"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON object of flag defaults; explicit flags win");

  GenOpts gen_o;
  auto* gen_cmd = app.add_subcommand("gen", "generate a margin-realizable dataset");
  gen_cmd->add_option("--d", gen_o.d, "dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--m", gen_o.m, "sample count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--gamma", gen_o.gamma, "planted margin");
  gen_cmd->add_option("--eta", gen_o.eta, "label flip probability");
  gen_cmd->add_option("--p", gen_o.p, "data norm exponent (number or 'inf')");
  gen_cmd->add_option("--seed", gen_o.seed, "seed");
  gen_cmd->add_option("--out", gen_o.out_dir, "output directory")->required();
  gen_cmd->add_option("--margin-slack", gen_o.margin_slack, "extra rejection margin");
  gen_cmd->add_option("--bias", gen_o.bias, "planted bias");
  gen_cmd->add_option("--w-star", gen_o.w_star_csv, "planted weights, comma separated");
  gen_cmd->callback([&] { gen_o.with_bias = gen_cmd->count("--bias") > 0; });
  add_common(gen_cmd, gen_o.common);

  TrainRermOpts rerm_o;
  auto* rerm_cmd = app.add_subcommand("train-rerm", "exact robust ERM via the ellipsoid method");
  rerm_cmd->add_option("--data", rerm_o.data, "dataset CSV")->required();
  rerm_cmd->add_option("--adversary", rerm_o.adversary, "adversary JSON (inline or path)")
      ->required();
  rerm_cmd->add_option("--b", rerm_o.bits, "precision bits");
  rerm_cmd->add_option("--tau", rerm_o.tau, "margin relaxation (0 = auto)");
  rerm_cmd->add_flag("--bias", rerm_o.with_bias, "learn an affine halfspace");
  rerm_cmd->add_flag("--force-oracle", rerm_o.force_oracle,
                     "certify through the ellipsoid even when closed forms exist");
  rerm_cmd->add_option("--out", rerm_o.out_model, "model JSON path");
  add_common(rerm_cmd, rerm_o.common);

  TrainRcnOpts rcn_o;
  auto* rcn_cmd = app.add_subcommand("train-rcn", "noise-aware margin training via mirror descent");
  rcn_cmd->add_option("--data", rcn_o.data, "dataset CSV")->required();
  rcn_cmd->add_option("--surrogate", rcn_o.surrogate, "leaky | glm");
  rcn_cmd->add_option("--gamma", rcn_o.gamma, "target margin");
  rcn_cmd->add_option("--eta", rcn_o.eta, "noise rate");
  rcn_cmd->add_option("--epsilon", rcn_o.epsilon, "target excess error");
  rcn_cmd->add_option("--p", rcn_o.p, "data norm exponent (number or 'inf')");
  rcn_cmd->add_option("--T", rcn_o.steps, "step budget (0 = auto)");
  rcn_cmd->add_option("--batch", rcn_o.batch, "minibatch size");
  rcn_cmd->add_option("--seed", rcn_o.seed, "seed");
  rcn_cmd->add_flag("--last-iterate", rcn_o.last_iterate, "return the last iterate, not the average");
  rcn_cmd->add_option("--margin-fraction", rcn_o.margin_fraction,
                      "evaluation margin as a fraction of gamma");
  rcn_cmd->add_option("--out", rcn_o.out_model, "model JSON path");
  add_common(rcn_cmd, rcn_o.common);

  EvalOpts eval_o;
  auto* eval_cmd = app.add_subcommand("eval", "robust risk and margin errors of a model");
  eval_cmd->add_option("--model", eval_o.model, "model JSON")->required();
  eval_cmd->add_option("--data", eval_o.data, "dataset CSV")->required();
  eval_cmd->add_option("--adversary", eval_o.adversary, "adversary JSON (inline or path)")
      ->required();
  eval_cmd->add_option("--gamma", eval_o.gamma, "margin threshold (default: ball radius)");
  eval_cmd->add_option("--b", eval_o.bits, "precision bits");
  add_common(eval_cmd, eval_o.common);

  CertifyOpts cert_o;
  auto* cert_cmd = app.add_subcommand("certify", "per-example robustness certificates");
  cert_cmd->add_option("--model", cert_o.model, "model JSON")->required();
  cert_cmd->add_option("--data", cert_o.data, "dataset CSV")->required();
  cert_cmd->add_option("--adversary", cert_o.adversary, "adversary JSON (inline or path)")
      ->required();
  cert_cmd->add_option("--b", cert_o.bits, "precision bits");
  cert_cmd->add_flag("--force-oracle", cert_o.force_oracle, "use the ellipsoid path everywhere");
  cert_cmd->add_option("--out", cert_o.out, "JSON-lines output path (default stdout)");
  add_common(cert_cmd, cert_o.common);

  ReduceOpts red_o;
  auto* red_cmd = app.add_subcommand(
      "reduce", "separation-from-evaluation demo on an lp ball body");
  red_cmd->add_option("--d", red_o.d, "dimension");
  red_cmd->add_option("--p", red_o.p, "body norm exponent");
  red_cmd->add_option("--radius", red_o.radius, "body radius");
  red_cmd->add_option("--gamma", red_o.gamma, "approximation slack");
  red_cmd->add_option("--queries", red_o.queries, "number of random queries");
  red_cmd->add_option("--seed", red_o.seed, "seed");
  red_cmd->add_option("--b", red_o.bits, "precision bits");
  add_common(red_cmd, red_o.common);

  SweepOpts sweep_o;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid of RCN training runs, CSV of records");
  sweep_cmd->add_option("--etas", sweep_o.etas, "comma separated noise rates");
  sweep_cmd->add_option("--gammas", sweep_o.gammas, "comma separated margins");
  sweep_cmd->add_option("--epsilons", sweep_o.epsilons, "comma separated targets");
  sweep_cmd->add_option("--ps", sweep_o.ps, "comma separated norm exponents");
  sweep_cmd->add_option("--surrogate", sweep_o.surrogate, "leaky | glm");
  sweep_cmd->add_option("--d", sweep_o.d, "dimension");
  sweep_cmd->add_option("--m", sweep_o.m, "training samples per cell");
  sweep_cmd->add_option("--holdout", sweep_o.holdout, "holdout samples per cell");
  sweep_cmd->add_option("--reps", sweep_o.reps, "replications per cell");
  sweep_cmd->add_option("--T", sweep_o.steps, "step budget (0 = auto)");
  sweep_cmd->add_option("--seed", sweep_o.seed, "seed");
  sweep_cmd->add_option("--out", sweep_o.out, "CSV output path")->required();
  add_common(sweep_cmd, sweep_o.common);

  try {
    apply_config_defaults(app, argc, argv);
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  } catch (const InvalidInput& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen_o);
    if (rerm_cmd->parsed()) return run_train_rerm(rerm_o);
    if (rcn_cmd->parsed()) return run_train_rcn(rcn_o);
    if (eval_cmd->parsed()) return run_eval(eval_o);
    if (cert_cmd->parsed()) return run_certify(cert_o);
    if (red_cmd->parsed()) return run_reduce(red_o);
    if (sweep_cmd->parsed()) return run_sweep(sweep_o);
  } catch (const GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const InvalidInput& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitConfig;
}
