// Prints the oracle values frozen into the unit tests. Not part of the
// library; rerun by hand if an oracle changes.
#include <cstdio>

#include "oracles.hpp"

int main() {
  using namespace oracle;
  {
    VectorXd x(2);
    x << 3, 4;
    const VectorXd v = prox_newton(x, 2.5);
    std::printf("prox((3,4), 2.5) = (%.17g, %.17g)\n", v(0), v(1));
  }
  {
    MatrixXd S(2, 2);
    S << 1, 0.3, 0.3, 1;
    MatrixXd D(2, 2);
    D << 1, 0, 0, 1;
    const MatrixXd phi = grouped_newton(S, D, VectorXd::Constant(2, 0.2));
    std::printf("grouped p=2 example:\n");
    for (int j = 0; j < 2; ++j) std::printf("  %.17g %.17g\n", phi(j, 0), phi(j, 1));
  }
  {
    MatrixXd A(4, 4);
    A << 1, 0, -1, 0, 0, 2, 0, -2, -1, 0, 1, 0, 0, -2, 0, 2;
    VectorXd b(4);
    b << 4, 5, -2, -3;
    const auto r = lp_vertex_enumeration(VectorXd::Ones(4), A, b);
    std::printf("lpd S=diag(1,2) d=(3,4) lam=1: feasible=%d obj=%.17g beta=(%.17g, %.17g)\n", r.feasible, r.objective,
                r.x(0) - r.x(2), r.x(1) - r.x(3));
  }
  std::printf("Phi(-1) = %.17g\n", normal_cdf_quadrature(-1.0));
  return 0;
}
