#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sparselda/error.hpp"
#include "sparselda/solvers.hpp"

using namespace slda;

TEST_CASE("group prox hand cases") {
  Vector x(2);
  x << 3, 4;
  CHECK(group_prox(x, 0.0) == x);
  CHECK(group_prox(x, 5.0) == Vector::Zero(2));
  CHECK(group_prox(x, 7.0) == Vector::Zero(2));
  const Vector v = group_prox(x, 2.5);
  CHECK(v(0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(v(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(group_prox(Vector::Zero(3), 1.0) == Vector::Zero(3));
  CHECK_THROWS_AS(group_prox(x, -1.0), Error);
}

TEST_CASE("group prox agrees with smoothed newton oracle") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.integer(1, 8);
    const Vector x = rng.normal_vector(m) * rng.uniform(0.1, 5.0);
    const double lam = rng.uniform(0.0, 2.0 * x.norm());
    const Vector ref = oracle::prox_newton(x, lam);
    CHECK((group_prox(x, lam) - ref).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("lipschitz estimate") {
  CHECK(lipschitz_upper(Matrix::Identity(3, 3), 1.0) == doctest::Approx(1.0).epsilon(1e-9));
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 1, 4;
  CHECK(lipschitz_upper(d, 1.0) == doctest::Approx(4.0).epsilon(1e-9));
  Matrix s(2, 2);
  s << 2, 1, 1, 2;
  CHECK(lipschitz_upper(s, 1.0) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(lipschitz_upper(s) == doctest::Approx(3.15).epsilon(1e-9));
  CHECK(lipschitz_upper(Matrix::Zero(3, 3), 1.0) > 0.0);
}

TEST_CASE("lipschitz bound dominates the spectrum on random scatter") {
  oracle::Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto A = rng.normal_matrix(15, 25);
    const Matrix S = A.transpose() * A / 15.0;
    const double top = Eigen::SelfAdjointEigenSolver<Matrix>(S).eigenvalues().maxCoeff();
    CHECK(lipschitz_upper(S) >= top);
  }
}

TEST_CASE("hard threshold") {
  Matrix m(3, 1);
  m << 3, 1.5, -2;
  const auto t = hard_threshold(DirectionSet(m), 2.0).matrix();
  CHECK(t(0, 0) == 3.0);
  CHECK(t(1, 0) == 0.0);
  CHECK(t(2, 0) == -2.0);
  CHECK(hard_threshold(DirectionSet(m), 0.0).matrix() == m);
}

TEST_CASE("theoretical lambda") {
  TheoreticalLambdaParams p;
  p.c0 = 1.0;
  p.pi_bar = 2.0;
  p.sigma_max_plus = 1.0;
  p.delta_total = 1.0;
  p.num_classes = 3;
  p.t = 1.0;
  p.num_samples = 103;
  CHECK(theoretical_lambda(p) == doctest::Approx(2.0 * std::sqrt(0.06)).epsilon(1e-14));
  CHECK(theoretical_lambda(p) == doctest::Approx(0.4899).epsilon(1e-4));
  p.t = 0.0;
  CHECK(theoretical_lambda(p) == 0.0);
  p.t = 1.0;
  p.num_samples = 3;
  CHECK_THROWS_AS(theoretical_lambda(p), Error);
}

TEST_CASE("pi bar and lambda max") {
  const double eq[] = {0.5, 0.5};
  CHECK(pi_bar(eq) == doctest::Approx(2.0));
  const double three[] = {0.5, 0.25, 0.25};
  // sqrt(0.75 / 0.125) = sqrt(6)
  CHECK(pi_bar(three) == doctest::Approx(std::sqrt(6.0)));
  Matrix d(2, 2);
  d << 3, 4, 1, 0;
  CHECK(lambda_max(d) == 5.0);
}

TEST_CASE("multiply scatter matches Eigen") {
  oracle::Rng rng(13);
  const auto S = rng.normal_matrix(7, 7);
  const auto X = rng.normal_matrix(7, 3);
  CHECK((multiply_scatter(S, X) - S * X).cwiseAbs().maxCoeff() < 1e-12);
}
