#include "sparselda/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "sparselda/error.hpp"
#include "sparselda/kernels.hpp"

namespace slda::lp {

namespace {

// Row-major tableau with the right-hand side stored as the last column.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t width) : rows_(rows), len_(width + 1), data_(rows * len_, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data_[i * len_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * len_ + j]; }
  double& rhs(std::size_t i) { return data_[i * len_ + len_ - 1]; }
  double rhs(std::size_t i) const { return data_[i * len_ + len_ - 1]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * len_, len_}; }
  std::size_t rows() const { return rows_; }
  std::size_t len() const { return len_; }

 private:
  std::size_t rows_;
  std::size_t len_;
  std::vector<double> data_;
};

struct Engine {
  Tableau& T;
  std::vector<std::size_t>& basis;
  std::vector<double> z;  // reduced costs; z.back() = -objective
  const Options& opts;
  int& pivots;
  int max_pivots;
  bool used_bland = false;

  void pivot(std::size_t r, std::size_t j) {
    auto prow = T.row(r);
    const double inv = 1.0 / prow[j];
    for (double& v : prow) v *= inv;
    prow[j] = 1.0;
    for (std::size_t i = 0; i < T.rows(); ++i) {
      if (i == r) continue;
      const double f = T.at(i, j);
      if (f == 0.0) continue;
      kernels::axpy(-f, prow, T.row(i));
      T.at(i, j) = 0.0;
      if (T.rhs(i) < 0.0 && T.rhs(i) > -opts.feas_tol) T.rhs(i) = 0.0;
    }
    const double f = z[j];
    if (f != 0.0) {
      kernels::axpy(-f, prow, std::span<double>(z));
      z[j] = 0.0;
    }
    basis[r] = j;
    ++pivots;
  }

  // Reduced costs for `cost` (indexed by column) against the current basis.
  void price(const std::vector<double>& cost) {
    z.assign(T.len(), 0.0);
    for (std::size_t j = 0; j + 1 < T.len(); ++j) z[j] = cost[j];
    for (std::size_t i = 0; i < T.rows(); ++i) {
      const double cb = cost[basis[i]];
      if (cb != 0.0) kernels::axpy(-cb, T.row(i), std::span<double>(z));
    }
  }

  // Columns >= allowed never enter.
  Status run(std::size_t allowed) {
    const std::size_t m = T.rows();
    const double cost_tol = opts.pivot_tol;
    bool bland = false;
    std::size_t degenerate_run = 0;
    for (;;) {
      if (pivots >= max_pivots) return Status::iteration_limit;

      std::size_t enter = allowed;
      double best = -cost_tol;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (z[j] < best) {
          enter = j;
          if (bland) break;
          best = z[j];
        }
      }
      if (enter == allowed) return Status::optimal;

      std::size_t leave = m;
      double ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        const double a = T.at(i, enter);
        if (a <= opts.pivot_tol) continue;
        const double q = std::max(T.rhs(i), 0.0) / a;
        if (leave == m || q < ratio - 1e-12 * std::max(1.0, ratio)) {
          ratio = q;
          leave = i;
        } else if (q <= ratio + 1e-12 * std::max(1.0, ratio) && basis[i] < basis[leave]) {
          ratio = std::min(ratio, q);
          leave = i;
        }
      }
      if (leave == m) return Status::unbounded;

      if (ratio <= opts.feas_tol) {
        if (++degenerate_run >= 10 * m && !bland) {
          bland = true;
          used_bland = true;
        }
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
    }
  }
};

}  // namespace

Result solve(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
             const Options& opts) {
  const auto m = static_cast<std::size_t>(A.rows());
  const auto n = static_cast<std::size_t>(A.cols());
  if (static_cast<std::size_t>(c.size()) != n || static_cast<std::size_t>(b.size()) != m)
    throw Error(Errc::dimension_mismatch, "lp::solve: dimension mismatch");

  std::vector<bool> flipped(m);
  std::size_t num_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    flipped[i] = b(static_cast<Eigen::Index>(i)) < 0.0;
    if (flipped[i]) ++num_art;
  }
  const std::size_t art0 = n + m;
  const std::size_t width = n + m + num_art;

  Tableau T(m, width);
  std::vector<std::size_t> basis(m);
  std::size_t next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = flipped[i] ? -1.0 : 1.0;
    const auto ii = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < n; ++j) T.at(i, j) = sign * A(ii, static_cast<Eigen::Index>(j));
    T.at(i, n + i) = sign;
    T.rhs(i) = sign * b(ii);
    if (flipped[i]) {
      T.at(i, next_art) = 1.0;
      basis[i] = next_art++;
    } else {
      basis[i] = n + i;
    }
  }

  Result res;
  int pivots = 0;
  const int max_pivots = opts.max_pivots > 0 ? opts.max_pivots : static_cast<int>(50 * (m + n));
  Engine eng{T, basis, {}, opts, pivots, max_pivots};

  if (num_art > 0) {
    std::vector<double> phase1(width, 0.0);
    for (std::size_t j = art0; j < width; ++j) phase1[j] = 1.0;
    eng.price(phase1);
    const Status s = eng.run(width);
    if (s == Status::iteration_limit) {
      res.status = s;
      res.pivots = pivots;
      return res;
    }
    const double infeas = -eng.z.back();
    const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
    if (infeas > 1e3 * opts.feas_tol * scale) {
      res.status = Status::infeasible;
      res.pivots = pivots;
      return res;
    }
    // Drive zero-level artificials out of the basis where possible. A row
    // with no usable structural or slack entry is redundant; its artificial
    // stays basic at zero and can never re-enter.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art0) continue;
      std::size_t best = art0;
      double mag = opts.pivot_tol;
      for (std::size_t j = 0; j < art0; ++j) {
        if (std::abs(T.at(i, j)) > mag) {
          mag = std::abs(T.at(i, j));
          best = j;
        }
      }
      if (best < art0) eng.pivot(i, best);
    }
  }

  std::vector<double> phase2(width, 0.0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c(static_cast<Eigen::Index>(j));
  eng.price(phase2);
  const Status s = eng.run(art0);
  res.status = s;
  res.pivots = pivots;
  res.used_bland = eng.used_bland;
  if (s != Status::optimal) return res;

  // Recover the basic solution from the original data rather than the
  // accumulated tableau.
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < m; ++r) {
    const auto rr = static_cast<Eigen::Index>(r);
    const std::size_t j = basis[r];
    if (j < n) {
      B.col(rr) = A.col(static_cast<Eigen::Index>(j));
    } else if (j < art0) {
      B(static_cast<Eigen::Index>(j - n), rr) = 1.0;
    } else {
      // Artificial of a flipped row i: column -e_i in the original orientation.
      std::size_t row_of = 0;
      for (std::size_t i = 0, a = art0; i < m; ++i) {
        if (!flipped[i]) continue;
        if (a == j) {
          row_of = i;
          break;
        }
        ++a;
      }
      B(static_cast<Eigen::Index>(row_of), rr) = -1.0;
    }
  }
  Eigen::VectorXd tab_xb(static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < m; ++r) tab_xb(static_cast<Eigen::Index>(r)) = std::max(T.rhs(r), 0.0);

  Eigen::VectorXd xb = tab_xb;
  const Eigen::VectorXd refined = Eigen::PartialPivLU<Eigen::MatrixXd>(B).solve(b);
  const double drift_tol = 1e-6 * std::max(1.0, tab_xb.cwiseAbs().maxCoeff());
  if (refined.allFinite() && (refined - tab_xb).cwiseAbs().maxCoeff() <= drift_tol)
    xb = refined.cwiseMax(0.0);

  res.x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) res.x(static_cast<Eigen::Index>(basis[r])) = xb(static_cast<Eigen::Index>(r));
  res.objective = c.dot(res.x);
  return res;
}

}  // namespace slda::lp
