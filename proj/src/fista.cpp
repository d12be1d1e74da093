#include <cmath>

#include "sparselda/error.hpp"
#include "sparselda/solvers.hpp"

namespace slda {

void SolverOptions::validate() const {
  if (max_iter < 1) throw Error(Errc::invalid_argument, "max_iter must be >= 1");
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tol must be > 0");
  if (!(lipschitz_boost >= 1.0)) throw Error(Errc::invalid_argument, "lipschitz_boost must be >= 1");
  if (!(kkt_tol > 0.0)) throw Error(Errc::invalid_argument, "kkt_tol must be > 0");
}

namespace {

// Objective from precomputed S*X.
double objective_with(const Matrix& X, const Matrix& SX, const Matrix& D, const Vector& lambdas) {
  const double smooth = 0.5 * X.cwiseProduct(SX).sum() - X.cwiseProduct(D).sum();
  return smooth + lambdas.dot(X.rowwise().norm());
}

double kkt_with(const Matrix& X, const Matrix& SX, const Matrix& D, const Vector& lambdas) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < X.rows(); ++j) {
    const auto g = SX.row(j) - D.row(j);
    const double norm = X.row(j).norm();
    const double r = norm == 0.0 ? std::max(g.norm() - lambdas(j), 0.0)
                                 : (g + (lambdas(j) / norm) * X.row(j)).norm();
    worst = std::max(worst, r);
  }
  return worst;
}

void prox_rows(Matrix& Z, const Vector& thresholds) {
  for (Eigen::Index j = 0; j < Z.rows(); ++j) {
    const double norm = Z.row(j).norm();
    if (norm <= thresholds(j)) {
      Z.row(j).setZero();
    } else {
      Z.row(j) *= (norm - thresholds(j)) / norm;
    }
  }
}

void check_inputs(const Matrix& S, const Matrix& D, const Vector& lambdas) {
  if (S.rows() != S.cols()) throw Error(Errc::dimension_mismatch, "scatter matrix is not square");
  if (D.rows() != S.rows()) throw Error(Errc::dimension_mismatch, "deltas do not match scatter");
  if (lambdas.size() != S.rows())
    throw Error(Errc::dimension_mismatch, "need one penalty weight per feature");
  if (D.cols() < 1) throw Error(Errc::dimension_mismatch, "need at least one direction");
  if ((lambdas.array() < 0.0).any() || !lambdas.allFinite())
    throw Error(Errc::invalid_argument, "penalty weights must be nonnegative");
}

}  // namespace

double grouped_objective(const Matrix& S, const Matrix& deltas, const Vector& lambdas,
                         const Matrix& directions) {
  check_inputs(S, deltas, lambdas);
  if (directions.rows() != S.rows() || directions.cols() != deltas.cols())
    throw Error(Errc::dimension_mismatch, "directions do not match deltas");
  return objective_with(directions, multiply_scatter(S, directions), deltas, lambdas);
}

GroupedFit fit_grouped(const Matrix& S, const Matrix& D, const Vector& lambdas,
                       const SolverOptions& opts, const Matrix* initial) {
  opts.validate();
  check_inputs(S, D, lambdas);
  const Eigen::Index p = S.rows();
  const Eigen::Index m = D.cols();

  SolverReport report;
  if ((D.rowwise().norm().array() <= lambdas.array()).all()) {
    // Zero satisfies the optimality conditions exactly.
    report.objective_trace.push_back(0.0);
    report.converged = true;
    return GroupedFit{DirectionSet(p, m), std::move(report)};
  }

  Matrix X = Matrix::Zero(p, m);
  if (initial != nullptr) {
    if (initial->rows() != p || initial->cols() != m)
      throw Error(Errc::dimension_mismatch, "initial directions have the wrong shape");
    X = *initial;
  }

  double L = lipschitz_upper(S, opts.lipschitz_boost);
  Matrix SX = multiply_scatter(S, X);
  double F = objective_with(X, SX, D, lambdas);
  report.objective_trace.push_back(F);

  Matrix Y = X;
  Matrix SY = SX;
  double t = 1.0;
  bool momentum = false;
  int stalls = 0;
  bool done = false;

  int it = 0;
  while (it < opts.max_iter && !done) {
    ++it;
    Matrix Xn = Y - (SY - D) / L;
    prox_rows(Xn, lambdas / L);
    Matrix SXn = multiply_scatter(S, Xn);
    const double Fn = objective_with(Xn, SXn, D, lambdas);

    if (opts.restart && Fn > F + 1e-13 * std::max(1.0, std::abs(F))) {
      if (momentum) {
        // Drop the momentum and retry from the last accepted point.
        Y = X;
        SY = SX;
        t = 1.0;
        momentum = false;
      } else {
        // A plain proximal step went uphill: the curvature estimate is too low.
        L *= 2.0;
      }
      continue;
    }

    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / tn;
    Y = Xn + beta * (Xn - X);
    SY = SXn + beta * (SXn - SX);
    momentum = beta != 0.0;
    t = tn;

    const double change = std::abs(F - Fn);
    X = std::move(Xn);
    SX = std::move(SXn);
    F = Fn;
    report.objective_trace.push_back(F);

    stalls = change <= opts.tol * std::max(1.0, std::abs(F)) ? stalls + 1 : 0;
    if (it % 50 == 0 && kkt_with(X, SX, D, lambdas) < 1e-6) {
      done = true;
    } else if (stalls >= 2) {
      // The objective has flattened; accept only if the optimality
      // conditions agree, otherwise keep iterating.
      if (kkt_with(X, SX, D, lambdas) <= 0.1 * opts.kkt_tol) done = true;
      stalls = 0;
    }
  }

  report.iterations = it;
  report.kkt_residual = kkt_with(X, SX, D, lambdas);
  report.converged = report.kkt_residual <= opts.kkt_tol;
  return GroupedFit{DirectionSet(std::move(X)), std::move(report)};
}

GroupedFit fit_grouped(const Matrix& S, const Matrix& deltas, double lambda,
                       const SolverOptions& opts, const Matrix* initial) {
  return fit_grouped(S, deltas, Vector::Constant(S.rows(), lambda), opts, initial);
}

}  // namespace slda
