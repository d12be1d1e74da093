#include <doctest.h>

#include "oracles.hpp"
#include "sparselda/error.hpp"
#include "sparselda/solvers.hpp"

using namespace slda;

TEST_CASE("origin when lambda covers every mean difference") {
  Matrix S(2, 2);
  S << 2, 1, 1, 2;
  Vector d(2);
  d << 0.5, -1.0;
  CHECK(fit_lpd(S, d, 1.0) == Vector::Zero(2));
  CHECK(fit_lpd(S, d, 3.0) == Vector::Zero(2));
}

TEST_CASE("hand linear programs") {
  Matrix s1(1, 1);
  s1 << 2;
  Vector d1(1);
  d1 << 3;
  CHECK(fit_lpd(s1, d1, 1.0)(0) == doctest::Approx(1.0).epsilon(1e-12));

  Matrix s2 = Matrix::Zero(2, 2);
  s2.diagonal() << 1, 2;
  Vector d2(2);
  d2 << 3, 4;
  const Vector b = fit_lpd(s2, d2, 1.0);
  CHECK(b(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(b(1) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("infeasible constraint set") {
  Matrix S = Matrix::Zero(2, 2);
  S(0, 0) = 1.0;
  Vector d(2);
  d << 1, 2;  // row 2 requires |0 - 2| <= lambda
  try {
    fit_lpd(S, d, 0.5);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible);
    CHECK(std::string(e.what()).find("LPD infeasible") != std::string::npos);
  }
}

TEST_CASE("random small instances agree with vertex enumeration") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const int p = rng.integer(1, 3);
    const auto A = rng.normal_matrix(p + 2, p);
    const Matrix S = A.transpose() * A / static_cast<double>(p + 2) + 0.05 * Matrix::Identity(p, p);
    const Vector d = rng.normal_vector(p);
    const double lam = rng.uniform(0.05, 1.0) * d.cwiseAbs().maxCoeff();
    Matrix big(2 * p, 2 * p);
    big << S, -S, -S, S;
    Vector rhs(2 * p);
    rhs << Vector::Constant(p, lam) + d, Vector::Constant(p, lam) - d;
    const auto ref = oracle::lp_vertex_enumeration(Vector::Ones(2 * p), big, rhs);
    REQUIRE(ref.feasible);
    const Vector b = fit_lpd(S, d, lam);
    CHECK(std::abs(b.lpNorm<1>() - ref.objective) < 1e-8);
    CHECK((S * b - d).cwiseAbs().maxCoeff() <= lam + 1e-8);
  }
}
