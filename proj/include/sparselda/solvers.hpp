#pragma once

// Direction estimators.
//
//   fit_grouped       min  sum_k 1/2 b_k'S b_k - d_k'b_k + sum_j lambda_j ||b^j||
//                     accelerated proximal gradient with function-value restart
//   fit_single_lasso  min  1/2 b'S b - d'b + lambda |b|_1      (cyclic coordinate descent)
//   fit_lpd           min  |b|_1  s.t.  |S b - d|_inf <= lambda (two-phase simplex)
//
// S is always the p x p pooled scatter; d_k are base-class mean differences.

#include <optional>
#include <span>
#include <vector>

#include "sparselda/model.hpp"

namespace slda {

struct SolverOptions {
  int max_iter = 5000;
  double tol = 1e-8;               // relative objective change
  double lipschitz_boost = 1.05;   // multiplier on the power-iteration estimate
  bool restart = true;             // function-value adaptive restart
  double kkt_tol = 1e-5;           // residual accepted as converged

  void validate() const;
};

struct SolverReport {
  int iterations = 0;
  std::vector<double> objective_trace;
  double kkt_residual = 0.0;
  bool converged = false;

  double final_objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

struct GroupedFit {
  DirectionSet directions;
  SolverReport report;
};

struct SingleFit {
  Vector beta;
  SolverReport report;
};

struct TheoreticalLambdaParams {
  double sigma_max_plus = 1.0;  // largest diagonal entry of the covariance
  double delta_total = 1.0;     // sum_k <Sigma^{-1} delta_k, delta_k>
  int num_classes = 2;
  Eigen::Index num_samples = 0;
  double pi_bar = 1.0;          // max_{k>=2} sqrt((pi_1 + pi_k) / (pi_1 pi_k))
  double t = 1.0;               // tail parameter, conventionally log(max(p, N))
  double c0 = 1.0;
};

/// ((||x|| - lam)_+ / ||x||) x; the zero vector when ||x|| <= lam.
Vector group_prox(const Eigen::Ref<const Vector>& x, double lam);

/// Power-iteration estimate of the largest eigenvalue of S, times boost.
double lipschitz_upper(const Matrix& S, double boost = 1.05);

/// Smooth part plus penalty at the given directions.
double grouped_objective(const Matrix& S, const Matrix& deltas, const Vector& lambdas,
                         const Matrix& directions);

double lasso_objective(const Matrix& S, const Vector& delta, double lam, const Vector& beta);

/// deltas: p x K' with column k = delta_k. lambdas: one weight per feature.
/// `initial` warm-starts the iteration; default is the zero matrix.
GroupedFit fit_grouped(const Matrix& S, const Matrix& deltas, const Vector& lambdas,
                       const SolverOptions& opts = {}, const Matrix* initial = nullptr);

/// Uniform-penalty convenience overload.
GroupedFit fit_grouped(const Matrix& S, const Matrix& deltas, double lambda,
                       const SolverOptions& opts = {}, const Matrix* initial = nullptr);

SingleFit fit_single_lasso(const Matrix& S, const Vector& delta, double lam,
                           const SolverOptions& opts = {}, const Vector* initial = nullptr);

/// Throws Error(Errc::infeasible) when no b satisfies the constraint.
Vector fit_lpd(const Matrix& S, const Vector& delta, double lam);

/// Zeroes every entry with |x| < zeta; entries with |x| == zeta are kept.
DirectionSet hard_threshold(const DirectionSet& ds, double zeta);

double theoretical_lambda(const TheoreticalLambdaParams& params);

/// pi_bar from class priors (pi_1 is the base class).
double pi_bar(std::span<const double> priors);

/// Smallest uniform penalty at which the zero matrix is optimal: max_j ||d^j||.
double lambda_max(const Matrix& deltas);

/// Largest group-wise violation of the optimality conditions:
///   zero row j:    (||S_j Phi - d^j|| - lambda_j)_+
///   nonzero row j: ||S_j Phi - d^j + lambda_j b^j / ||b^j|| ||
double kkt_residual(const Matrix& S, const Matrix& deltas, const Vector& lambdas,
                    const DirectionSet& ds);

/// Least squares restricted to a known support: S_TT^{-1} d_T on T, zero off it.
/// Throws if S_TT is singular (condition number >= 1e12).
Vector oracle_restricted_fit(const Matrix& S, const Vector& delta,
                             std::span<const Eigen::Index> support);

/// Column-wise S * X through the dispatched kernels.
Matrix multiply_scatter(const Matrix& S, const Matrix& X);

}  // namespace slda
