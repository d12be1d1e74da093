#pragma once

// Penalty grids, estimator dispatch, stratified k-fold cross-validation and
// support-recovery metrics.

#include <cstdint>
#include <string_view>
#include <vector>

#include "sparselda/model.hpp"
#include "sparselda/solvers.hpp"

namespace slda {

enum class Estimator { grouped, single, lpd, nbayes, pinv };

std::string_view estimator_name(Estimator e) noexcept;
/// Throws Error(Errc::parse) for unknown names.
Estimator parse_estimator(std::string_view name);
/// True for the estimators that take a penalty.
bool estimator_is_penalized(Estimator e) noexcept;

struct LambdaGrid {
  std::vector<double> values;  // strictly decreasing, all > 0

  void validate() const;
  std::size_t size() const noexcept { return values.size(); }
};

/// n log-spaced values from lmax down to lmax * 10^-decades.
LambdaGrid lambda_grid(double lmax, int n, double decades);

struct DirectionFit {
  DirectionSet directions;
  bool converged = true;
  int iterations = 0;
  double kkt_residual = 0.0;
  double objective = 0.0;
};

/// Fits K' directions with one of grouped / single / lpd / pinv. `warm`
/// (grouped and single only) seeds the iteration.
DirectionFit fit_directions(Estimator e, const Matrix& S, const Matrix& deltas, double lambda,
                            const SolverOptions& opts = {}, const DirectionSet* warm = nullptr);

struct CvResult {
  LambdaGrid grid;
  std::vector<double> mean_error;
  std::vector<double> sd_error;  // sample standard deviation across folds
  std::size_t chosen_index = 0;
  double chosen_lambda = 0.0;
  std::vector<int> fold_of;      // fold id (0-based) per sample
};

/// Index of the smallest mean error; among ties (within 1e-12) the largest
/// lambda, i.e. the earliest grid position.
std::size_t choose_lambda_index(const LambdaGrid& grid, const std::vector<double>& mean_error);

/// Stratified fold assignment: each class is shuffled with the seed and dealt
/// round-robin. Throws Error(Errc::insufficient_data) if a class has fewer
/// samples than folds.
std::vector<int> stratified_folds(const Dataset& d, int folds, std::uint64_t seed);

/// For each grid value and fold: fit on the other folds (priors and means
/// re-estimated there), classify the held-out fold. An infeasible LPD fit
/// counts as error rate 1 on that fold.
CvResult kfold_cv(const Dataset& d, const LambdaGrid& grid, int folds, std::uint64_t seed,
                  Estimator e = Estimator::grouped, const SolverOptions& opts = {});

struct SupportCounts {
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  bool exact_recovery = true;
};

struct SupportMetrics {
  std::vector<SupportCounts> per_direction;
  SupportCounts joint;  // row-support unions
};

SupportCounts compare_supports(const std::vector<Eigen::Index>& estimated,
                               const std::vector<Eigen::Index>& truth);

/// Compares supports after hard_threshold(estimated, zeta).
SupportMetrics support_metrics(const DirectionSet& estimated, const DirectionSet& truth,
                               double zeta = 0.0);

}  // namespace slda
