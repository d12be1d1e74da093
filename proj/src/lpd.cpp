#include <cmath>

#include "sparselda/error.hpp"
#include "sparselda/simplex.hpp"
#include "sparselda/solvers.hpp"

namespace slda {

// beta = u - v with u, v >= 0:
//   minimize 1'u + 1'v
//   subject to  S u - S v <= lam + delta
//              -S u + S v <= lam - delta
Vector fit_lpd(const Matrix& S, const Vector& delta, double lam) {
  const Eigen::Index p = S.rows();
  if (S.cols() != p || delta.size() != p) throw Error(Errc::dimension_mismatch, "fit_lpd: dimension mismatch");
  if (!(lam > 0.0)) throw Error(Errc::invalid_argument, "fit_lpd: lambda must be positive");

  Matrix A(2 * p, 2 * p);
  A.topLeftCorner(p, p) = S;
  A.topRightCorner(p, p) = -S;
  A.bottomLeftCorner(p, p) = -S;
  A.bottomRightCorner(p, p) = S;
  Vector b(2 * p);
  b.head(p) = Vector::Constant(p, lam) + delta;
  b.tail(p) = Vector::Constant(p, lam) - delta;
  const Vector c = Vector::Ones(2 * p);

  const lp::Result res = lp::solve(c, A, b);
  if (res.status == lp::Status::infeasible)
    throw Error(Errc::infeasible, "LPD infeasible at this lambda");
  if (res.status != lp::Status::optimal)
    throw Error(Errc::infeasible, "LPD: simplex did not reach an optimal basis");

  Vector beta = res.x.head(p) - res.x.tail(p);
  return beta;
}

}  // namespace slda
