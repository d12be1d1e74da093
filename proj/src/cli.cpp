#include "sparselda/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "sparselda/classify.hpp"
#include "sparselda/error.hpp"
#include "sparselda/io.hpp"
#include "sparselda/select.hpp"
#include "sparselda/simulate.hpp"
#include "sparselda/solvers.hpp"

namespace slda::cli {

namespace {

struct Config {
  std::string data;
  std::string out;
  std::string model;
  std::string truth;
  std::string estimator = "grouped";
  std::string lambda;
  std::string grid = "auto:50:3";
  std::string design;
  int folds = 5;
  std::uint64_t seed = 1;
  int per_class = 20;
  double zeta = 0.0;
  double c0 = 1.0;
  int max_iter = 5000;
  double tol = 1e-8;
  bool strict = false;
};

SolverOptions solver_options(const Config& c) {
  SolverOptions o;
  o.max_iter = c.max_iter;
  o.tol = c.tol;
  return o;
}

LambdaGrid parse_grid(const std::string& spec, const Matrix& deltas) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3) throw Error(Errc::parse, "--lambda-grid expects lmax:n:decades");
  try {
    const double lmax = parts[0] == "auto" ? lambda_max(deltas) : std::stod(parts[0]);
    return lambda_grid(lmax, std::stoi(parts[1]), std::stod(parts[2]));
  } catch (const std::logic_error&) {
    throw Error(Errc::parse, "--lambda-grid: bad number in '" + spec + "'");
  } catch (const Error& e) {
    throw Error(Errc::parse, std::string("--lambda-grid: ") + e.what());
  }
}

// Penalty from the theory formula. With a truth sidecar the population
// quantities are used; otherwise S_jj stands in for Sigma_jj and Delta is
// approximated by sum_k sum_j delta_kj^2 / S_jj.
double theory_lambda(const Config& c, const Dataset& d, const ClassSummaries& cs, const PooledScatter& ps) {
  TheoreticalLambdaParams tp;
  tp.num_classes = d.num_classes();
  tp.num_samples = d.num_samples();
  tp.pi_bar = pi_bar(cs.priors);
  tp.t = std::log(static_cast<double>(std::max(d.num_features(), d.num_samples())));
  tp.c0 = c.c0;
  if (!c.truth.empty()) {
    const io::TruthFile t = io::read_truth(c.truth);
    tp.sigma_max_plus = t.sigma.sigma_plus_max;
    tp.delta_total = 0.0;
    for (double v : t.delta) tp.delta_total += v;
  } else {
    const Vector diag = ps.S.diagonal().cwiseMax(kVarianceFloor);
    tp.sigma_max_plus = diag.maxCoeff();
    double total = 0.0;
    for (const auto& dk : cs.deltas) total += (dk.array().square() / diag.array()).sum();
    tp.delta_total = total;
  }
  return theoretical_lambda(tp);
}

double parse_lambda(const Config& c, const Dataset& d, const ClassSummaries& cs, const PooledScatter& ps) {
  if (c.lambda.empty()) throw Error(Errc::parse, "--lambda is required for penalized estimators");
  if (c.lambda == "theory") return theory_lambda(c, d, cs, ps);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(c.lambda, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used != c.lambda.size() || !(v > 0.0)) throw Error(Errc::parse, "--lambda must be a positive number or 'theory'");
  return v;
}

int cmd_fit(const Config& c, std::ostream& out) {
  const Estimator est = parse_estimator(c.estimator);
  const Dataset d = io::read_dataset(c.data);
  const ClassSummaries cs = summarize(d);

  io::ModelFile m;
  m.estimator = std::string(estimator_name(est));
  m.zeta = c.zeta;
  m.priors = cs.priors;
  m.means = cs.means;

  if (est == Estimator::nbayes) {
    const NaiveBayesModel nb = naive_bayes_fit(d);
    m.kind = "nbayes";
    m.variances = nb.variances();
    io::write_model(c.out, m);
    out << "estimator=nbayes classes=" << d.num_classes() << " features=" << d.num_features() << '\n';
    return kOk;
  }

  const PooledScatter ps = pooled_scatter(d, cs);
  const Matrix deltas = cs.delta_matrix();
  std::optional<double> lambda;
  if (estimator_is_penalized(est)) lambda = parse_lambda(c, d, cs, ps);
  const DirectionFit fit = fit_directions(est, ps.S, deltas, lambda.value_or(0.0), solver_options(c));
  const DirectionSet thr = hard_threshold(fit.directions, c.zeta);

  m.kind = "lda";
  m.lambda = lambda;
  m.directions = thr.matrix();
  m.scatter = covariance_summary(ps.S);
  io::write_model(c.out, m);

  out << "estimator=" << m.estimator;
  if (lambda) out << " lambda=" << io::format_real(*lambda);
  out << " iterations=" << fit.iterations << " objective=" << io::format_real(fit.objective)
      << " kkt_residual=" << io::format_real(fit.kkt_residual) << " converged=" << (fit.converged ? "true" : "false")
      << " nonzero_rows=" << thr.row_support().size() << '\n';
  if (c.strict && !fit.converged) return kNotConverged;
  return kOk;
}

int cmd_cv(const Config& c, std::ostream& out) {
  const Estimator est = parse_estimator(c.estimator);
  if (!estimator_is_penalized(est)) throw Error(Errc::parse, "cv needs grouped, single or lpd");
  const Dataset d = io::read_dataset(c.data);
  const ClassSummaries cs = summarize(d);
  const LambdaGrid grid = parse_grid(c.grid, cs.delta_matrix());
  const CvResult r = kfold_cv(d, grid, c.folds, c.seed, est, solver_options(c));

  std::string table = "lambda,mean_error,sd_error,chosen\n";
  for (std::size_t g = 0; g < grid.size(); ++g) {
    table += io::format_real(grid.values[g]) + ',' + io::format_real(r.mean_error[g]) + ',' +
             io::format_real(r.sd_error[g]) + ',' + (g == r.chosen_index ? "1" : "0") + '\n';
  }
  io::write_file_atomic(c.out, table);
  out << "chosen_lambda=" << io::format_real(r.chosen_lambda)
      << " mean_error=" << io::format_real(r.mean_error[r.chosen_index])
      << " sd_error=" << io::format_real(r.sd_error[r.chosen_index]) << '\n';
  return kOk;
}

int cmd_predict(const Config& c, std::ostream& out) {
  const io::ModelFile m = io::read_model(c.model);
  const io::CsvTable t = io::read_csv(c.data);
  if (t.features.cols() != m.num_features())
    throw Error(Errc::dimension_mismatch, "test data has " + std::to_string(t.features.cols()) +
                                              " features, model expects " + std::to_string(m.num_features()));
  const std::vector<int>* truth = t.labels ? &*t.labels : nullptr;
  PredictionReport rep;
  if (m.kind == "nbayes") {
    rep = evaluate(NaiveBayesModel(m.means, m.variances, m.priors), t.features, truth);
  } else {
    rep = evaluate(ClassifierModel(DirectionSet(m.directions), m.means, m.priors), t.features, truth);
  }
  std::string body = "prediction\n";
  for (int y : rep.predicted) body += std::to_string(y) + '\n';
  io::write_file_atomic(c.out, body);
  out << "samples=" << rep.predicted.size();
  if (rep.error_rate) out << " error_rate=" << io::format_real(*rep.error_rate);
  out << '\n';
  return kOk;
}

int cmd_path(const Config& c, std::ostream& out) {
  const Estimator est = parse_estimator(c.estimator);
  if (!estimator_is_penalized(est)) throw Error(Errc::parse, "path needs grouped, single or lpd");
  const Dataset d = io::read_dataset(c.data);
  const ClassSummaries cs = summarize(d);
  const PooledScatter ps = pooled_scatter(d, cs);
  const Matrix deltas = cs.delta_matrix();
  const LambdaGrid grid = parse_grid(c.grid, deltas);

  std::string body = "lambda,direction,feature,coefficient,group_norm\n";
  DirectionSet warm;
  bool all_converged = true;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const DirectionFit fit = fit_directions(est, ps.S, deltas, grid.values[g], solver_options(c), g > 0 ? &warm : nullptr);
    all_converged = all_converged && fit.converged;
    const DirectionSet thr = hard_threshold(fit.directions, c.zeta);
    const Vector norms = group_norms(thr);
    const std::string lam = io::format_real(grid.values[g]);
    for (Eigen::Index k = 0; k < thr.num_directions(); ++k)
      for (Eigen::Index j = 0; j < thr.num_features(); ++j)
        body += lam + ',' + std::to_string(k + 1) + ',' + std::to_string(j + 1) + ',' +
                io::format_real(thr.matrix()(j, k)) + ',' + io::format_real(norms(j)) + '\n';
    warm = fit.directions;
  }
  io::write_file_atomic(c.out, body);
  out << "grid_points=" << grid.size() << " directions=" << deltas.cols() << " features=" << d.num_features()
      << " converged=" << (all_converged ? "true" : "false") << '\n';
  if (c.strict && !all_converged) return kNotConverged;
  return kOk;
}

int cmd_simulate(const Config& c, std::ostream& out) {
  SimulationSpec spec;
  if (c.design == "sim1") {
    spec = sim1_spec(c.seed, c.per_class);
  } else if (c.design == "sim2") {
    spec = sim2_spec(c.seed, c.per_class);
  } else {
    throw Error(Errc::parse, "unknown design '" + c.design + "' (expected sim1 or sim2)");
  }
  const Dataset d = sample(spec);
  const std::string truth_path = c.truth.empty() ? c.out + ".truth.json" : c.truth;
  io::write_dataset(c.out, d);
  io::write_file_atomic(truth_path, io::format_truth(io::truth_from_spec(spec, c.design)));
  out << "design=" << c.design << " samples=" << d.num_samples() << " features=" << d.num_features()
      << " truth=" << truth_path << '\n';
  return kOk;
}

int cmd_diagnose(const Config& c, std::ostream& out) {
  if (c.truth.empty()) throw Error(Errc::parse, "--truth is required");
  const io::ModelFile m = io::read_model(c.model);
  const io::TruthFile t = io::read_truth(c.truth);
  if (m.kind != "lda") throw Error(Errc::parse, "diagnose needs a discriminant-direction model");
  if (m.directions.rows() != t.directions.rows() || m.directions.cols() != t.directions.cols())
    throw Error(Errc::dimension_mismatch, "model and truth differ in shape");

  const DirectionSet est(m.directions);
  const DirectionSet truth(t.directions);
  const auto support = truth.row_support();
  const Matrix diff = m.directions - t.directions;

  using nlohmann::ordered_json;
  std::string body;
  ordered_json summary;
  summary["record"] = "summary";
  summary["cone_condition"] = cone_condition_check(est, truth, support);
  if (m.scatter) {
    summary["event_d"] = event_d_check(*m.scatter, t.sigma);
  } else {
    summary["event_d"] = nullptr;
  }
  summary["sup_group_error"] = diff.rowwise().norm().maxCoeff();
  summary["zeta"] = c.zeta;
  body += summary.dump() + '\n';

  const SupportMetrics sm = support_metrics(est, truth, c.zeta);
  for (Eigen::Index k = 0; k < diff.cols(); ++k) {
    const auto& s = sm.per_direction[static_cast<std::size_t>(k)];
    ordered_json r;
    r["record"] = "direction";
    r["direction"] = k + 1;
    r["linf_error"] = diff.col(k).cwiseAbs().maxCoeff();
    r["true_positives"] = s.true_positives;
    r["false_positives"] = s.false_positives;
    r["false_negatives"] = s.false_negatives;
    r["exact_recovery"] = s.exact_recovery;
    body += r.dump() + '\n';
  }
  ordered_json j;
  j["record"] = "joint";
  j["true_positives"] = sm.joint.true_positives;
  j["false_positives"] = sm.joint.false_positives;
  j["false_negatives"] = sm.joint.false_negatives;
  j["exact_recovery"] = sm.joint.exact_recovery;
  body += j.dump() + '\n';

  io::write_file_atomic(c.out, body);
  out << "sup_group_error=" << io::format_real(diff.rowwise().norm().maxCoeff())
      << " joint_exact_recovery=" << (sm.joint.exact_recovery ? "true" : "false") << '\n';
  return kOk;
}

int exit_code_for(Errc e) {
  switch (e) {
    case Errc::infeasible: return kInfeasible;
    case Errc::insufficient_data: return kFoldTooSmall;
    case Errc::dimension_mismatch: return kDimensionMismatch;
    case Errc::parse:
    case Errc::invalid_argument:
    case Errc::not_positive_definite: break;
  }
  return kParseError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Grouped sparse multi-class linear discriminant analysis"};
  app.require_subcommand(1);

  auto add_solver = [&](CLI::App* s) {
    s->add_option("--max-iter", c.max_iter, "Solver iteration cap")->check(CLI::PositiveNumber);
    s->add_option("--tol", c.tol, "Relative objective-change tolerance")->check(CLI::PositiveNumber);
  };
  const std::string est_help = "grouped | single | lpd | nbayes | pinv";

  auto* fit = app.add_subcommand("fit", "Fit discriminant directions and write a model file");
  fit->add_option("--data", c.data, "Training CSV")->required();
  fit->add_option("--estimator", c.estimator, est_help);
  fit->add_option("--lambda", c.lambda, "Penalty value, or 'theory'");
  fit->add_option("--truth", c.truth, "Truth sidecar for --lambda theory");
  fit->add_option("--c0", c.c0, "Constant in the theory penalty")->check(CLI::PositiveNumber);
  fit->add_option("--zeta", c.zeta, "Hard threshold applied to the fitted directions")->check(CLI::NonNegativeNumber);
  fit->add_flag("--strict", c.strict, "Exit 3 if the solver does not converge");
  fit->add_option("--out", c.out, "Model file")->required();
  add_solver(fit);

  auto* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation over a penalty grid");
  cv->add_option("--data", c.data, "Training CSV")->required();
  cv->add_option("--estimator", c.estimator, "grouped | single | lpd");
  cv->add_option("--lambda-grid", c.grid, "lmax:n:decades (lmax may be 'auto')");
  cv->add_option("--folds", c.folds, "Fold count")->check(CLI::Range(2, 1000));
  cv->add_option("--seed", c.seed, "Fold shuffling seed");
  cv->add_option("--out", c.out, "CV table CSV")->required();
  add_solver(cv);

  auto* pred = app.add_subcommand("predict", "Predict labels with a fitted model");
  pred->add_option("--model", c.model, "Model file")->required();
  pred->add_option("--data", c.data, "Test CSV, labeled or not")->required();
  pred->add_option("--out", c.out, "Predictions CSV")->required();

  auto* path = app.add_subcommand("path", "Trace coefficients along a penalty grid");
  path->add_option("--data", c.data, "Training CSV")->required();
  path->add_option("--estimator", c.estimator, "grouped | single | lpd");
  path->add_option("--lambda-grid", c.grid, "lmax:n:decades (lmax may be 'auto')");
  path->add_option("--zeta", c.zeta, "Hard threshold applied before writing")->check(CLI::NonNegativeNumber);
  path->add_flag("--strict", c.strict, "Exit 3 if any fit does not converge");
  path->add_option("--out", c.out, "Path CSV")->required();
  add_solver(path);

  auto* sim = app.add_subcommand("simulate", "Draw a dataset from a simulation design");
  sim->add_option("--design", c.design, "sim1 | sim2")->required();
  sim->add_option("--seed", c.seed, "Sampling seed");
  sim->add_option("--per-class", c.per_class, "Samples per class")->check(CLI::PositiveNumber);
  sim->add_option("--out", c.out, "Dataset CSV")->required();
  sim->add_option("--truth", c.truth, "Truth sidecar (default <out>.truth.json)");

  auto* diag = app.add_subcommand("diagnose", "Compare a fitted model with the true directions");
  diag->add_option("--model", c.model, "Model file")->required();
  diag->add_option("--truth", c.truth, "Truth sidecar");
  diag->add_option("--zeta", c.zeta, "Hard threshold for support metrics")->check(CLI::NonNegativeNumber);
  diag->add_option("--out", c.out, "Diagnostics JSON-lines file")->required();

  std::vector<std::string> argv_store{"sparselda"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kParseError;
  }

  try {
    if (*fit) return cmd_fit(c, out);
    if (*cv) return cmd_cv(c, out);
    if (*pred) return cmd_predict(c, out);
    if (*path) return cmd_path(c, out);
    if (*sim) return cmd_simulate(c, out);
    if (*diag) return cmd_diagnose(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kParseError;
}

}  // namespace slda::cli
