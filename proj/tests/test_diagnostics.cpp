#include <doctest.h>

#include "oracles.hpp"
#include "sparselda/error.hpp"
#include "sparselda/solvers.hpp"

using namespace slda;

TEST_CASE("kkt residual at exact points") {
  oracle::Rng rng(1);
  const auto A = rng.normal_matrix(10, 4);
  const Matrix S = A.transpose() * A / 10.0;
  const Matrix D = rng.normal_matrix(4, 2);
  const Vector big = Vector::Constant(4, lambda_max(D));
  CHECK(kkt_residual(S, D, big, DirectionSet(4, 2)) == 0.0);
  const Matrix exact = S.ldlt().solve(D);
  CHECK(kkt_residual(S, D, Vector::Zero(4), DirectionSet(exact)) <= 1e-9);
  Matrix bumped = exact;
  bumped(1, 0) += 0.1;
  CHECK(kkt_residual(S, D, Vector::Zero(4), DirectionSet(bumped)) > 0.0);
}

TEST_CASE("kkt residual hand value") {
  // S = I, d = (3), lambda = 1: optimum is 2; at 2.5 the residual is |2.5 - 3 + 1| = 0.5
  Matrix S = Matrix::Identity(1, 1);
  Matrix D(1, 1);
  D << 3;
  Matrix b(1, 1);
  b << 2.5;
  CHECK(kkt_residual(S, D, Vector::Ones(1), DirectionSet(b)) == doctest::Approx(0.5));
  CHECK(kkt_residual(S, D, Vector::Ones(1), DirectionSet(1, 1)) == doctest::Approx(2.0));
}

TEST_CASE("oracle restricted fit") {
  oracle::Rng rng(2);
  const Vector d = rng.normal_vector(4);
  const Eigen::Index t13[] = {0, 2};
  const Vector b = oracle_restricted_fit(Matrix::Identity(4, 4), d, t13);
  CHECK(b(0) == doctest::Approx(d(0)));
  CHECK(b(2) == doctest::Approx(d(2)));
  CHECK(b(1) == 0.0);
  CHECK(b(3) == 0.0);
  CHECK(oracle_restricted_fit(Matrix::Identity(4, 4), d, {}) == Vector::Zero(4));

  Matrix S = Matrix::Identity(3, 3);
  S.topLeftCorner(2, 2) << 2, 1, 1, 2;
  Vector dd(3);
  dd << 3, 3, 7;
  const Eigen::Index t12[] = {0, 1};
  const Vector c = oracle_restricted_fit(S, dd, t12);
  CHECK(c(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c(2) == 0.0);

  Matrix sing = Matrix::Ones(2, 2);
  const Eigen::Index both[] = {0, 1};
  CHECK_THROWS_AS(oracle_restricted_fit(sing, Vector::Ones(2), both), Error);
}
