#include <doctest.h>

#include "oracles.hpp"
#include "sparselda/simplex.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;
namespace lp = slda::lp;

TEST_CASE("textbook maximization") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  -> (2, 6), value 36
  MatrixXd A(3, 2);
  A << 1, 0, 0, 2, 3, 2;
  VectorXd b(3);
  b << 4, 12, 18;
  VectorXd c(2);
  c << -3, -5;
  const auto r = lp::solve(c, A, b);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(-36.0));
  CHECK(r.x(0) == doctest::Approx(2.0));
  CHECK(r.x(1) == doctest::Approx(6.0));
}

TEST_CASE("phase one with negative right-hand sides") {
  // min x + y s.t. x + y >= 2, x <= 3
  MatrixXd A(2, 2);
  A << -1, -1, 1, 0;
  VectorXd b(2);
  b << -2, 3;
  const auto r = lp::solve(VectorXd::Ones(2), A, b);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(2.0));
}

TEST_CASE("infeasible and unbounded") {
  MatrixXd A(2, 1);
  A << 1, -1;
  VectorXd b(2);
  b << 1, -2;  // x <= 1 and x >= 2
  CHECK(lp::solve(VectorXd::Ones(1), A, b).status == lp::Status::infeasible);

  MatrixXd B(1, 2);
  B << 1, -1;
  VectorXd bb(1);
  bb << 1;
  VectorXd c(2);
  c << 0, -1;
  CHECK(lp::solve(c, B, bb).status == lp::Status::unbounded);
}

TEST_CASE("degenerate problem terminates") {
  // Beale's cycling example under Dantzig's rule without anti-cycling.
  MatrixXd A(3, 4);
  A << 0.25, -8, -1, 9, 0.5, -12, -0.5, 3, 0, 0, 1, 0;
  VectorXd b(3);
  b << 0, 0, 1;
  VectorXd c(4);
  c << -0.75, 20, -0.5, 6;
  const auto r = lp::solve(c, A, b);
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(-1.25));
}

TEST_CASE("random feasible programs agree with vertex enumeration") {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.integer(1, 4);
    const int m = rng.integer(1, 5);
    const MatrixXd A = rng.normal_matrix(m, n);
    const VectorXd x0 = (rng.normal_vector(n).array().abs()).matrix();
    const VectorXd b = A * x0 + (rng.normal_vector(m).array().abs()).matrix();
    const VectorXd c = (rng.normal_vector(n).array().abs()).matrix();
    const auto ref = oracle::lp_vertex_enumeration(c, A, b);
    const auto r = lp::solve(c, A, b);
    REQUIRE(ref.feasible);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(std::abs(r.objective - ref.objective) < 1e-9);
    CHECK(((A * r.x - b).array() <= 1e-9).all());
    CHECK((r.x.array() >= 0.0).all());
  }
}
