#pragma once

// Dense two-phase primal simplex for
//
//     minimize  c'x   subject to  A x <= b,  x >= 0
//
// b may have either sign; rows with b_i < 0 get an artificial variable and
// are cleared in phase 1. Pivoting is Dantzig's most-negative reduced cost,
// switching to Bland's rule after 10 * rows consecutive degenerate pivots.

#include <Eigen/Dense>

namespace slda::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Result {
  Status status = Status::iteration_limit;
  Eigen::VectorXd x;
  double objective = 0.0;
  int pivots = 0;
  bool used_bland = false;
};

struct Options {
  double pivot_tol = 1e-9;
  double feas_tol = 1e-9;
  int max_pivots = 0;  // 0 = 50 * (rows + cols)
};

Result solve(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
             const Options& opts = {});

}  // namespace slda::lp
