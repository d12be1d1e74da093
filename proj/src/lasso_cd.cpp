#include <cmath>

#include "sparselda/error.hpp"
#include "sparselda/kernels.hpp"
#include "sparselda/solvers.hpp"

namespace slda {

namespace {

double soft(double z, double lam) {
  if (z > lam) return z - lam;
  if (z < -lam) return z + lam;
  return 0.0;
}

double lasso_kkt(const Vector& beta, const Vector& sb, const Vector& delta, double lam) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const double g = sb(j) - delta(j);
    const double r = beta(j) == 0.0 ? std::max(std::abs(g) - lam, 0.0)
                                    : std::abs(g + (beta(j) > 0.0 ? lam : -lam));
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace

double lasso_objective(const Matrix& S, const Vector& delta, double lam, const Vector& beta) {
  if (S.rows() != S.cols() || delta.size() != S.rows() || beta.size() != S.rows())
    throw Error(Errc::dimension_mismatch, "lasso_objective: dimension mismatch");
  return 0.5 * beta.dot(S * beta) - delta.dot(beta) + lam * beta.lpNorm<1>();
}

// Covariance-form cyclic coordinate descent. S*beta is kept up to date with
// one column axpy per changed coordinate.
SingleFit fit_single_lasso(const Matrix& S, const Vector& delta, double lam,
                           const SolverOptions& opts, const Vector* initial) {
  opts.validate();
  const Eigen::Index p = S.rows();
  if (S.cols() != p || delta.size() != p)
    throw Error(Errc::dimension_mismatch, "fit_single_lasso: dimension mismatch");
  if (!(lam >= 0.0)) throw Error(Errc::invalid_argument, "fit_single_lasso: negative lambda");

  Vector beta = Vector::Zero(p);
  if (initial != nullptr) {
    if (initial->size() != p) throw Error(Errc::dimension_mismatch, "initial beta has wrong size");
    beta = *initial;
  }
  Vector sb = S * beta;
  const auto n = static_cast<std::size_t>(p);
  auto objective = [&] { return 0.5 * beta.dot(sb) - delta.dot(beta) + lam * beta.lpNorm<1>(); };

  SolverReport report;
  double F = objective();
  report.objective_trace.push_back(F);
  int stalls = 0;
  int sweep = 0;
  bool done = false;
  while (sweep < opts.max_iter && !done) {
    ++sweep;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double sjj = S(j, j);
      const double z = delta(j) - (sb(j) - sjj * beta(j));
      // A zero-curvature coordinate is bounded only when |z| <= lam; its
      // minimizer is then 0.
      const double next = sjj > 0.0 ? soft(z, lam) / sjj : 0.0;
      const double step = next - beta(j);
      if (step != 0.0) {
        kernels::axpy(step, std::span<const double>(S.col(j).data(), n), std::span<double>(sb.data(), n));
        beta(j) = next;
      }
    }
    const double Fn = objective();
    const double change = std::abs(F - Fn);
    F = Fn;
    report.objective_trace.push_back(F);

    stalls = change <= opts.tol * std::max(1.0, std::abs(F)) ? stalls + 1 : 0;
    if (sweep % 50 == 0 && lasso_kkt(beta, sb, delta, lam) < 1e-6) {
      done = true;
    } else if (stalls >= 2) {
      if (lasso_kkt(beta, sb, delta, lam) <= 0.1 * opts.kkt_tol) done = true;
      stalls = 0;
    }
  }

  // Refresh S*beta from scratch so the reported residual has no drift.
  sb = S * beta;
  report.iterations = sweep;
  report.kkt_residual = lasso_kkt(beta, sb, delta, lam);
  report.converged = report.kkt_residual <= opts.kkt_tol;
  return SingleFit{std::move(beta), std::move(report)};
}

}  // namespace slda
