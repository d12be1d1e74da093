#include "sparselda/simulate.hpp"

#include <cmath>
#include <random>

#include "sparselda/error.hpp"

namespace slda {

SimulationSpec spec_from_directions(Matrix sigma, Matrix directions, std::vector<int> class_sizes,
                                    std::uint64_t seed) {
  const Eigen::Index p = sigma.rows();
  if (sigma.cols() != p || directions.rows() != p)
    throw Error(Errc::dimension_mismatch, "simulation: Sigma and directions disagree");
  if (static_cast<Eigen::Index>(class_sizes.size()) != directions.cols() + 1)
    throw Error(Errc::dimension_mismatch, "simulation: need K = K' + 1 class sizes");
  SimulationSpec spec;
  spec.mus.push_back(Vector::Zero(p));
  for (Eigen::Index k = 0; k < directions.cols(); ++k)
    spec.mus.push_back(spec.mus[0] - sigma * directions.col(k));
  spec.sigma = std::move(sigma);
  spec.true_directions = std::move(directions);
  spec.class_sizes = std::move(class_sizes);
  spec.seed = seed;
  return spec;
}

SimulationSpec sim1_spec(std::uint64_t seed, int per_class) {
  constexpr Eigen::Index p = 200;
  Matrix sigma = Matrix::Identity(p, p);
  const double row4[3] = {1.0 / 4, 1.0 / 3, 1.0 / 4};
  const double row5[3] = {1.0 / 5, -1.0 / 4, 1.0 / 5};
  for (Eigen::Index j = 0; j < 3; ++j) {
    sigma(3, j) = sigma(j, 3) = row4[j];
    sigma(4, j) = sigma(j, 4) = row5[j];
  }
  Matrix beta = Matrix::Zero(p, 2);
  beta.col(0).head(3) << -2.0, 3.0, 1.0;
  beta.col(1).head(3) << 1.0, -2.0, -1.2;
  return spec_from_directions(std::move(sigma), std::move(beta), {per_class, per_class, per_class}, seed);
}

SimulationSpec sim2_spec(std::uint64_t seed, int per_class) {
  constexpr Eigen::Index p = 200;
  constexpr Eigen::Index half = p / 2;
  Matrix sigma = Matrix::Identity(p, p);
  for (Eigen::Index i = 0; i < half; ++i)
    for (Eigen::Index j = 0; j < half; ++j)
      sigma(i, j) = std::pow(3.0, -static_cast<double>(std::abs(i - j)));
  Matrix beta = Matrix::Zero(p, 2);
  beta.col(0).head(4) << -1.5, 1.0, 0.0, 2.0;
  beta.col(1).head(3) << 1.0, -1.8, -2.0;
  return spec_from_directions(std::move(sigma), std::move(beta), {per_class, per_class, per_class}, seed);
}

Dataset sample(const SimulationSpec& spec) {
  const Eigen::Index p = spec.num_features();
  const int K = spec.num_classes();
  if (static_cast<int>(spec.class_sizes.size()) != K)
    throw Error(Errc::dimension_mismatch, "simulation: one size per class required");
  Eigen::Index n = 0;
  for (int nk : spec.class_sizes) {
    if (nk < 1) throw Error(Errc::insufficient_data, "simulation: every class needs at least one sample");
    n += nk;
  }
  const Eigen::LLT<Matrix> llt(spec.sigma);
  if (llt.info() != Eigen::Success) throw Error(Errc::not_positive_definite, "Sigma not positive definite");
  const Matrix L = llt.matrixL();

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x(n, p);
  std::vector<int> labels;
  labels.reserve(static_cast<std::size_t>(n));
  Vector z(p);
  Eigen::Index row = 0;
  for (int k = 0; k < K; ++k) {
    for (int i = 0; i < spec.class_sizes[k]; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) z(j) = normal(rng);
      x.row(row++) = (spec.mus[k] + L.triangularView<Eigen::Lower>() * z).transpose();
      labels.push_back(k + 1);
    }
  }
  return Dataset(std::move(x), std::move(labels), K);
}

CovarianceSummary covariance_summary(const Matrix& A) {
  if (A.rows() != A.cols() || A.rows() == 0) throw Error(Errc::dimension_mismatch, "covariance_summary: square matrix required");
  CovarianceSummary s;
  s.sigma_plus_min = A.diagonal().minCoeff();
  s.sigma_plus_max = A.diagonal().maxCoeff();
  double off = 0.0;
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      if (i != j) off = std::max(off, std::abs(A(i, j)));
  s.sigma_minus_max = off;
  return s;
}

bool event_d_check(const CovarianceSummary& s, const CovarianceSummary& sigma, double tol) {
  return s.sigma_minus_max <= 2.0 * sigma.sigma_minus_max + tol &&
         s.sigma_plus_min + tol >= 0.5 * sigma.sigma_plus_min;
}

bool event_d_check(const Matrix& S, const Matrix& sigma) {
  if (S.rows() != sigma.rows() || S.cols() != sigma.cols())
    throw Error(Errc::dimension_mismatch, "event_d_check: shape mismatch");
  return event_d_check(covariance_summary(S), covariance_summary(sigma));
}

bool cone_condition_check(const DirectionSet& estimated, const DirectionSet& truth,
                          std::span<const Eigen::Index> support) {
  if (estimated.num_features() != truth.num_features() || estimated.num_directions() != truth.num_directions())
    throw Error(Errc::dimension_mismatch, "cone_condition_check: shape mismatch");
  std::vector<bool> in_t(static_cast<std::size_t>(estimated.num_features()), false);
  for (Eigen::Index j : support) {
    if (j < 0 || j >= estimated.num_features()) throw Error(Errc::invalid_argument, "support index out of range");
    in_t[static_cast<std::size_t>(j)] = true;
  }
  double off = 0.0, on = 0.0;
  for (Eigen::Index j = 0; j < estimated.num_features(); ++j) {
    if (in_t[static_cast<std::size_t>(j)]) {
      on += (estimated.row(j) - truth.row(j)).norm();
    } else {
      off += estimated.row(j).norm();
    }
  }
  return off <= 3.0 * on;
}

double delta_quadratic(const Matrix& sigma, const Vector& delta) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != delta.size())
    throw Error(Errc::dimension_mismatch, "delta_quadratic: dimension mismatch");
  const Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success) throw Error(Errc::not_positive_definite, "Sigma not positive definite");
  return llt.solve(delta).dot(delta);
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double bayes_error_binary(double delta) {
  if (!(delta >= 0.0)) throw Error(Errc::invalid_argument, "bayes_error_binary: Delta must be nonnegative");
  if (std::isinf(delta)) return 0.0;
  return standard_normal_cdf(-0.5 * std::sqrt(delta));
}

}  // namespace slda
