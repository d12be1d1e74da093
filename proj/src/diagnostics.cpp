#include <cmath>

#include "sparselda/error.hpp"
#include "sparselda/solvers.hpp"

namespace slda {

double kkt_residual(const Matrix& S, const Matrix& deltas, const Vector& lambdas,
                    const DirectionSet& ds) {
  const Matrix& phi = ds.matrix();
  if (S.rows() != S.cols() || S.rows() != phi.rows() || deltas.rows() != phi.rows() ||
      deltas.cols() != phi.cols() || lambdas.size() != phi.rows())
    throw Error(Errc::dimension_mismatch, "kkt_residual: dimension mismatch");
  const Matrix grad = multiply_scatter(S, phi) - deltas;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < phi.rows(); ++j) {
    const double norm = phi.row(j).norm();
    double r;
    if (norm == 0.0) {
      r = std::max(grad.row(j).norm() - lambdas(j), 0.0);
    } else {
      r = (grad.row(j) + (lambdas(j) / norm) * phi.row(j)).norm();
    }
    worst = std::max(worst, r);
  }
  return worst;
}

Vector oracle_restricted_fit(const Matrix& S, const Vector& delta,
                             std::span<const Eigen::Index> support) {
  const Eigen::Index p = S.rows();
  if (S.cols() != p || delta.size() != p)
    throw Error(Errc::dimension_mismatch, "oracle_restricted_fit: dimension mismatch");
  Vector out = Vector::Zero(p);
  const auto t = static_cast<Eigen::Index>(support.size());
  if (t == 0) return out;

  Matrix block(t, t);
  Vector rhs(t);
  for (Eigen::Index a = 0; a < t; ++a) {
    if (support[a] < 0 || support[a] >= p)
      throw Error(Errc::invalid_argument, "oracle_restricted_fit: support index out of range");
    rhs(a) = delta(support[a]);
    for (Eigen::Index b = 0; b < t; ++b) block(a, b) = S(support[a], support[b]);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(block, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo >= 1e12)
    throw Error(Errc::not_positive_definite, "oracle_restricted_fit: singular restricted block");
  const Vector sol = block.ldlt().solve(rhs);
  for (Eigen::Index a = 0; a < t; ++a) out(support[a]) = sol(a);
  return out;
}

}  // namespace slda
