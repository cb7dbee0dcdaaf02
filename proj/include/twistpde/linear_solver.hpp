#pragma once

#include <vector>

#include "twistpde/grid.hpp"
#include "twistpde/sym_matrix.hpp"

namespace twistpde {

// Nine-point discretization of w -> L^{ab} d_ab w with Dirichlet data at
// the cut points, stored in CSR form. The cut contributions are folded
// into `rhs`.
struct StencilSystem {
  int n = 0;
  std::vector<int> rowptr, col;
  std::vector<double> val;
  std::vector<double> rhs;

  void apply(const std::vector<double>& x, std::vector<double>& y) const;
};

// L is one symmetric 2x2 coefficient matrix per node; `rhs` supplies the
// interior right-hand side and, through its cut values, the Dirichlet
// data g.
StencilSystem assemble(const std::vector<SymMatrix>& L, const GridField& rhs);

struct LinearSolveOptions {
  double rel_tol = 1e-13;  // target; success requires <= accept_tol
  double accept_tol = 1e-12;
  int max_iter = 10000;
};

// Jacobi-preconditioned BiCGStab. Returns the achieved relative
// residual; throws NumericalError (carrying it) when the iteration cap
// is exhausted above accept_tol.
double bicgstab(const StencilSystem& sys, std::vector<double>& x,
                const LinearSolveOptions& opts = {});

// Solve L^{ab} d_ab w = rhs with Dirichlet data taken from the cut
// values of `rhs`. The returned field carries the same boundary data.
GridField linear_solve(const std::vector<SymMatrix>& L, const GridField& rhs,
                       const LinearSolveOptions& opts = {});

}  // namespace twistpde
