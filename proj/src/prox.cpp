#include <algorithm>
#include <cmath>
#include <limits>

#include "sparselda/error.hpp"
#include "sparselda/kernels.hpp"
#include "sparselda/solvers.hpp"

namespace slda {

Vector group_prox(const Eigen::Ref<const Vector>& x, double lam) {
  if (!(lam >= 0.0)) throw Error(Errc::invalid_argument, "group_prox: negative lambda");
  const double norm = x.norm();
  if (norm <= lam) return Vector::Zero(x.size());
  return ((norm - lam) / norm) * x;
}

DirectionSet hard_threshold(const DirectionSet& ds, double zeta) {
  if (!(zeta >= 0.0)) throw Error(Errc::invalid_argument, "hard_threshold: negative zeta");
  Matrix out = ds.matrix();
  for (Eigen::Index k = 0; k < out.cols(); ++k)
    for (Eigen::Index j = 0; j < out.rows(); ++j)
      if (std::abs(out(j, k)) < zeta) out(j, k) = 0.0;
  return DirectionSet(std::move(out));
}

double theoretical_lambda(const TheoreticalLambdaParams& p) {
  if (p.num_samples <= p.num_classes)
    throw Error(Errc::insufficient_data, "theoretical_lambda: need N > K");
  if (!(p.sigma_max_plus > 0.0) || !(p.delta_total > 0.0) || !(p.pi_bar > 0.0) ||
      !(p.c0 > 0.0) || !(p.t >= 0.0) || p.num_classes < 2)
    throw Error(Errc::invalid_argument, "theoretical_lambda: parameters must be positive");
  const double dof = static_cast<double>(p.num_samples - p.num_classes);
  const double scale = std::max(p.delta_total, static_cast<double>(p.num_classes));
  return 2.0 * p.c0 * std::sqrt(p.pi_bar * p.sigma_max_plus * scale * p.t / dof);
}

double pi_bar(std::span<const double> priors) {
  if (priors.size() < 2) throw Error(Errc::invalid_argument, "pi_bar: need two classes");
  double best = 0.0;
  const double p1 = priors[0];
  for (std::size_t k = 1; k < priors.size(); ++k)
    best = std::max(best, std::sqrt((p1 + priors[k]) / (p1 * priors[k])));
  return best;
}

double lambda_max(const Matrix& deltas) {
  return deltas.size() == 0 ? 0.0 : deltas.rowwise().norm().maxCoeff();
}

Matrix multiply_scatter(const Matrix& S, const Matrix& X) {
  const auto p = static_cast<std::size_t>(S.rows());
  Matrix out(S.rows(), X.cols());
  for (Eigen::Index k = 0; k < X.cols(); ++k) {
    kernels::gemv_colmajor(S.data(), p, static_cast<std::size_t>(S.cols()), p,
                           std::span<const double>(X.col(k).data(), static_cast<std::size_t>(X.rows())),
                           std::span<double>(out.col(k).data(), p));
  }
  return out;
}

double lipschitz_upper(const Matrix& S, double boost) {
  if (!(boost >= 1.0)) throw Error(Errc::invalid_argument, "lipschitz_boost must be >= 1");
  const Eigen::Index p = S.rows();
  constexpr double kFloor = std::numeric_limits<double>::epsilon();
  if (p == 0) return kFloor;

  // Fixed, generic start vector: no coordinate is favoured and it is not
  // orthogonal to any eigenvector in practice.
  Vector v(p);
  for (Eigen::Index i = 0; i < p; ++i) v(i) = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
  v.normalize();
  Vector w(p);
  const auto n = static_cast<std::size_t>(p);
  double estimate = 0.0;
  for (int it = 0; it < 50; ++it) {
    kernels::gemv_colmajor(S.data(), n, n, n, std::span<const double>(v.data(), n),
                           std::span<double>(w.data(), n));
    const double rayleigh = v.dot(w);
    const double wn = w.norm();
    const bool settled = it > 0 && std::abs(rayleigh - estimate) <= 1e-10 * std::abs(rayleigh);
    estimate = rayleigh;
    if (wn == 0.0 || settled) break;
    v = w / wn;
  }
  return std::max(boost * estimate, kFloor);
}

}  // namespace slda
