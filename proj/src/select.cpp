#include "sparselda/select.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sparselda/classify.hpp"
#include "sparselda/error.hpp"

namespace slda {

std::string_view estimator_name(Estimator e) noexcept {
  switch (e) {
    case Estimator::grouped: return "grouped";
    case Estimator::single: return "single";
    case Estimator::lpd: return "lpd";
    case Estimator::nbayes: return "nbayes";
    case Estimator::pinv: return "pinv";
  }
  return "unknown";
}

Estimator parse_estimator(std::string_view name) {
  for (Estimator e : {Estimator::grouped, Estimator::single, Estimator::lpd, Estimator::nbayes, Estimator::pinv})
    if (estimator_name(e) == name) return e;
  throw Error(Errc::parse, "unknown estimator '" + std::string(name) + "'");
}

bool estimator_is_penalized(Estimator e) noexcept {
  return e == Estimator::grouped || e == Estimator::single || e == Estimator::lpd;
}

void LambdaGrid::validate() const {
  if (values.empty()) throw Error(Errc::invalid_argument, "lambda grid is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i]))
      throw Error(Errc::invalid_argument, "lambda grid values must be positive");
    if (i > 0 && !(values[i] < values[i - 1]))
      throw Error(Errc::invalid_argument, "lambda grid must be strictly decreasing");
  }
}

LambdaGrid lambda_grid(double lmax, int n, double decades) {
  if (!(lmax > 0.0) || !std::isfinite(lmax)) throw Error(Errc::invalid_argument, "lambda_grid: lmax must be positive");
  if (n < 1) throw Error(Errc::invalid_argument, "lambda_grid: need at least one point");
  if (!(decades > 0.0)) throw Error(Errc::invalid_argument, "lambda_grid: decades must be positive");
  LambdaGrid g;
  g.values.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double e = n == 1 ? 0.0 : -decades * static_cast<double>(i) / static_cast<double>(n - 1);
    g.values.push_back(lmax * std::pow(10.0, e));
  }
  g.values.front() = lmax;
  g.validate();
  return g;
}

DirectionFit fit_directions(Estimator e, const Matrix& S, const Matrix& deltas, double lambda,
                            const SolverOptions& opts, const DirectionSet* warm) {
  DirectionFit out;
  switch (e) {
    case Estimator::grouped: {
      const Matrix* init = warm != nullptr ? &warm->matrix() : nullptr;
      GroupedFit f = fit_grouped(S, deltas, lambda, opts, init);
      out.directions = std::move(f.directions);
      out.converged = f.report.converged;
      out.iterations = f.report.iterations;
      out.kkt_residual = f.report.kkt_residual;
      out.objective = f.report.final_objective();
      return out;
    }
    case Estimator::single: {
      Matrix coef(S.rows(), deltas.cols());
      for (Eigen::Index k = 0; k < deltas.cols(); ++k) {
        Vector init;
        if (warm != nullptr) init = warm->column(k);
        SingleFit f = fit_single_lasso(S, deltas.col(k), lambda, opts, warm != nullptr ? &init : nullptr);
        coef.col(k) = f.beta;
        out.converged = out.converged && f.report.converged;
        out.iterations += f.report.iterations;
        out.kkt_residual = std::max(out.kkt_residual, f.report.kkt_residual);
        out.objective += f.report.final_objective();
      }
      out.directions = DirectionSet(std::move(coef));
      return out;
    }
    case Estimator::lpd: {
      Matrix coef(S.rows(), deltas.cols());
      for (Eigen::Index k = 0; k < deltas.cols(); ++k) {
        coef.col(k) = fit_lpd(S, deltas.col(k), lambda);
        out.objective += coef.col(k).lpNorm<1>();
      }
      out.directions = DirectionSet(std::move(coef));
      return out;
    }
    case Estimator::pinv: {
      out.directions = DirectionSet(symmetric_pinv(S) * deltas);
      return out;
    }
    case Estimator::nbayes:
      break;
  }
  throw Error(Errc::invalid_argument, "estimator does not produce discriminant directions");
}

std::size_t choose_lambda_index(const LambdaGrid& grid, const std::vector<double>& mean_error) {
  if (mean_error.size() != grid.size() || grid.size() == 0)
    throw Error(Errc::dimension_mismatch, "one error per grid value required");
  const double best = *std::min_element(mean_error.begin(), mean_error.end());
  std::size_t chosen = 0;
  double chosen_lambda = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (mean_error[i] <= best + 1e-12 && grid.values[i] > chosen_lambda) {
      chosen = i;
      chosen_lambda = grid.values[i];
    }
  }
  return chosen;
}

std::vector<int> stratified_folds(const Dataset& d, int folds, std::uint64_t seed) {
  if (folds < 2) throw Error(Errc::invalid_argument, "need at least two folds");
  for (int k = 1; k <= d.num_classes(); ++k)
    if (d.class_count(k) < folds)
      throw Error(Errc::insufficient_data, "class " + std::to_string(k) + " has fewer samples than folds");

  std::mt19937_64 rng(seed);
  std::vector<int> fold_of(static_cast<std::size_t>(d.num_samples()), 0);
  int offset = 0;
  for (int k = 1; k <= d.num_classes(); ++k) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < d.labels().size(); ++i)
      if (d.labels()[i] == k) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    // Continue the round-robin across classes so fold sizes stay balanced.
    for (std::size_t r = 0; r < members.size(); ++r)
      fold_of[members[r]] = static_cast<int>((static_cast<std::size_t>(offset) + r) % static_cast<std::size_t>(folds));
    offset = static_cast<int>((static_cast<std::size_t>(offset) + members.size()) % static_cast<std::size_t>(folds));
  }
  return fold_of;
}

CvResult kfold_cv(const Dataset& d, const LambdaGrid& grid, int folds, std::uint64_t seed, Estimator e,
                  const SolverOptions& opts) {
  grid.validate();
  if (!estimator_is_penalized(e)) throw Error(Errc::invalid_argument, "cross-validation needs a penalized estimator");

  CvResult res;
  res.grid = grid;
  res.fold_of = stratified_folds(d, folds, seed);

  const std::size_t G = grid.size();
  std::vector<std::vector<double>> err(G, std::vector<double>(static_cast<std::size_t>(folds), 0.0));
  for (int f = 0; f < folds; ++f) {
    std::vector<Eigen::Index> train, test;
    for (std::size_t i = 0; i < res.fold_of.size(); ++i)
      (res.fold_of[i] == f ? test : train).push_back(static_cast<Eigen::Index>(i));
    const Dataset tr = d.subset(train);
    Matrix xtest(static_cast<Eigen::Index>(test.size()), d.num_features());
    std::vector<int> ytest;
    for (std::size_t i = 0; i < test.size(); ++i) {
      xtest.row(static_cast<Eigen::Index>(i)) = d.features().row(test[i]);
      ytest.push_back(d.labels()[static_cast<std::size_t>(test[i])]);
    }
    const ClassSummaries cs = summarize(tr);
    const PooledScatter ps = pooled_scatter(tr, cs);
    const Matrix deltas = cs.delta_matrix();

    DirectionSet warm;
    bool have_warm = false;
    for (std::size_t g = 0; g < G; ++g) {
      double rate = 1.0;
      try {
        DirectionFit fit = fit_directions(e, ps.S, deltas, grid.values[g], opts, have_warm ? &warm : nullptr);
        const ClassifierModel model = build_model(cs, fit.directions);
        rate = *evaluate(model, xtest, &ytest).error_rate;
        warm = std::move(fit.directions);
        have_warm = true;
      } catch (const Error& ex) {
        if (ex.code() != Errc::infeasible) throw;
      }
      err[g][static_cast<std::size_t>(f)] = rate;
    }
  }

  res.mean_error.resize(G);
  res.sd_error.resize(G);
  for (std::size_t g = 0; g < G; ++g) {
    double mean = 0.0;
    for (double v : err[g]) mean += v;
    mean /= static_cast<double>(folds);
    double ss = 0.0;
    for (double v : err[g]) ss += (v - mean) * (v - mean);
    res.mean_error[g] = mean;
    res.sd_error[g] = std::sqrt(ss / static_cast<double>(folds - 1));
  }
  res.chosen_index = choose_lambda_index(grid, res.mean_error);
  res.chosen_lambda = grid.values[res.chosen_index];
  return res;
}

SupportCounts compare_supports(const std::vector<Eigen::Index>& estimated,
                               const std::vector<Eigen::Index>& truth) {
  SupportCounts c;
  for (Eigen::Index j : estimated) {
    if (std::find(truth.begin(), truth.end(), j) != truth.end()) {
      ++c.true_positives;
    } else {
      ++c.false_positives;
    }
  }
  for (Eigen::Index j : truth)
    if (std::find(estimated.begin(), estimated.end(), j) == estimated.end()) ++c.false_negatives;
  c.exact_recovery = c.false_positives == 0 && c.false_negatives == 0;
  return c;
}

SupportMetrics support_metrics(const DirectionSet& estimated, const DirectionSet& truth, double zeta) {
  if (estimated.num_features() != truth.num_features() || estimated.num_directions() != truth.num_directions())
    throw Error(Errc::dimension_mismatch, "support_metrics: shape mismatch");
  const DirectionSet thr = hard_threshold(estimated, zeta);
  SupportMetrics m;
  for (Eigen::Index k = 0; k < truth.num_directions(); ++k)
    m.per_direction.push_back(compare_supports(thr.column_support(k), truth.column_support(k)));
  m.joint = compare_supports(thr.row_support(), truth.row_support());
  return m;
}

}  // namespace slda
