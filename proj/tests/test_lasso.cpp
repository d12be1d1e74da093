#include <doctest.h>

#include "oracles.hpp"
#include "sparselda/error.hpp"
#include "sparselda/solvers.hpp"

using namespace slda;

TEST_CASE("scalar soft threshold") {
  Matrix S(1, 1);
  S << 1;
  Vector d(1);
  d << 3;
  const auto fit = fit_single_lasso(S, d, 1.0);
  CHECK(fit.beta(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.report.converged);
}

TEST_CASE("unpenalized solve and origin optimality") {
  oracle::Rng rng(1);
  const auto A = rng.normal_matrix(12, 5);
  const Matrix S = A.transpose() * A / 12.0;
  const Vector d = rng.normal_vector(5);
  const auto fit = fit_single_lasso(S, d, 0.0);
  CHECK((fit.beta - S.ldlt().solve(d)).cwiseAbs().maxCoeff() < 1e-6);
  const auto zero = fit_single_lasso(S, d, d.cwiseAbs().maxCoeff());
  CHECK(zero.beta == Vector::Zero(5));
}

TEST_CASE("lasso agrees with the grouped newton oracle at one direction") {
  oracle::Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index p = rng.integer(2, 7);
    const auto A = rng.normal_matrix(rng.integer(2, 10), p);
    const Matrix S = A.transpose() * A / static_cast<double>(A.rows()) + 0.1 * Matrix::Identity(p, p);
    const Vector d = rng.normal_vector(p);
    const double lam = rng.uniform(0.0, 1.0) * d.cwiseAbs().maxCoeff();
    const auto fit = fit_single_lasso(S, d, lam);
    const Matrix ref = oracle::grouped_newton(S, d, Vector::Constant(p, lam));
    CHECK((fit.beta - ref.col(0)).cwiseAbs().maxCoeff() < 1e-5);
    CHECK(fit.report.objective_trace.back() <= fit.report.objective_trace.front() + 1e-12);
    CHECK(fit.report.final_objective() == doctest::Approx(lasso_objective(S, d, lam, fit.beta)));
  }
}

TEST_CASE("singular curvature coordinate") {
  Matrix S = Matrix::Zero(2, 2);
  S(0, 0) = 2.0;
  Vector d(2);
  d << 4, 0;
  const auto fit = fit_single_lasso(S, d, 1.0);
  CHECK(fit.beta(0) == doctest::Approx(1.5));
  CHECK(fit.beta(1) == 0.0);
}

TEST_CASE("lasso input errors") {
  CHECK_THROWS_AS(fit_single_lasso(Matrix::Identity(2, 2), Vector::Zero(3), 0.1), Error);
  CHECK_THROWS_AS(fit_single_lasso(Matrix::Identity(2, 2), Vector::Zero(2), -0.1), Error);
}
