#pragma once

// Gaussian LDA simulation designs and theory-side diagnostics.
//
// Sign convention: delta_k = mu_1 - mu_{k+1} and beta_k = Sigma^{-1} delta_k,
// so designs given by their directions use mu_1 = 0 and
// mu_{k+1} = mu_1 - Sigma beta_k.

#include <cstdint>
#include <span>
#include <vector>

#include "sparselda/model.hpp"

namespace slda {

struct SimulationSpec {
  Matrix sigma;
  std::vector<Vector> mus;
  Matrix true_directions;  // p x K'
  std::vector<int> class_sizes;
  std::uint64_t seed = 0;

  int num_classes() const noexcept { return static_cast<int>(mus.size()); }
  Eigen::Index num_features() const noexcept { return sigma.rows(); }
};

/// Builds the class means from directions with mu_1 = 0.
SimulationSpec spec_from_directions(Matrix sigma, Matrix directions, std::vector<int> class_sizes,
                                    std::uint64_t seed);

/// p = 200, K = 3, n_k = 20; sparse correlations between features 4,5 and 1..3.
SimulationSpec sim1_spec(std::uint64_t seed, int per_class = 20);

/// p = 200, K = 3, n_k = 20; Sigma_ij = 3^-|i-j| on the first p/2 features.
SimulationSpec sim2_spec(std::uint64_t seed, int per_class = 20);

/// n_k draws per class from N(mu_k, Sigma) via the Cholesky factor.
/// Throws Error(Errc::not_positive_definite) if Sigma has no Cholesky factor.
Dataset sample(const SimulationSpec& spec);

struct CovarianceSummary {
  double sigma_plus_min = 0.0;   // min diagonal
  double sigma_plus_max = 0.0;   // max diagonal
  double sigma_minus_max = 0.0;  // max |off-diagonal|
};

CovarianceSummary covariance_summary(const Matrix& A);

/// S^-_max <= 2 Sigma^-_max and S^+_min >= Sigma^+_min / 2, read literally.
bool event_d_check(const Matrix& S, const Matrix& sigma);
/// Same test on precomputed summaries; `tol` relaxes both inequalities.
bool event_d_check(const CovarianceSummary& s, const CovarianceSummary& sigma, double tol = 0.0);

/// sum_{j not in T} ||bhat^j|| <= 3 sum_{j in T} ||bhat^j - beta^j||.
bool cone_condition_check(const DirectionSet& estimated, const DirectionSet& truth,
                          std::span<const Eigen::Index> support);

/// <Sigma^{-1} delta, delta> through a Cholesky solve.
double delta_quadratic(const Matrix& sigma, const Vector& delta);

double standard_normal_cdf(double x);

/// Phi(-sqrt(Delta) / 2): Bayes risk of two equiprobable Gaussian classes.
double bayes_error_binary(double delta);

}  // namespace slda
