#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twistpde/grid.hpp"
#include "twistpde/linear_solver.hpp"
#include "twistpde/matrix_calculus.hpp"
#include "twistpde/operator_spec.hpp"

namespace twistpde {

// What the Newton solver needs from an operator: a value, a derivative
// (the linearization coefficients), and a cone margin that is positive
// exactly when the linearization is elliptic at M.
class HessianOperator {
public:
  virtual ~HessianOperator() = default;
  virtual double value(const SymMatrix& M) const = 0;
  virtual SymMatrix gradient(const SymMatrix& M) const = 0;
  virtual double cone_margin(const SymMatrix& M) const = 0;
};

// An OperatorSpec seen through the solver interface. The cone margin is
// min(lambda_min(M) + 1, smallest gradient diagonal in the eigenbasis).
class SpecOperator : public HessianOperator {
public:
  explicit SpecOperator(OperatorSpec spec) : spec_(std::move(spec)) {}
  const OperatorSpec& spec() const { return spec_; }
  double value(const SymMatrix& M) const override { return spec_.value(M); }
  SymMatrix gradient(const SymMatrix& M) const override {
    return op_gradient(spec_, M);
  }
  double cone_margin(const SymMatrix& M) const override;

private:
  OperatorSpec spec_;
};

// The shifted form of the sigma-sum operator: K(N) = det(N) - tr(N)
// acting on N = D^2 v with v = u + |x|^2/2. Solving K(D^2 v) = f - n + 1
// and mapping back recovers the original equation.
class KrylovShiftedOperator : public HessianOperator {
public:
  explicit KrylovShiftedOperator(int n) : n_(n) {}
  double value(const SymMatrix& N) const override;
  SymMatrix gradient(const SymMatrix& N) const override;
  double cone_margin(const SymMatrix& N) const override;

private:
  int n_;
};

// Node-wise op(discrete_hessian(u)) - rhs.
GridField residual(const HessianOperator& op, const GridField& u,
                   const GridField& rhs);

struct SolveOptions {
  int continuity_steps = 10;
  double newton_tol = 1e-10;    // sup-norm residual target
  double cone_margin = 1e-8;    // required margin of accepted iterates
  int max_newton_iter = 60;
  double min_step = 1e-8;       // damping cutoff
  int max_bisect_depth = 6;     // adaptive continuity bisection
  bool allow_low_rhs = false;   // permit f <= n - 1 experiments
  double rhs_floor_eps = 1e-6;  // f must exceed n - 1 + this
  double supersolution_R_cap = 65536.0;  // 2^16
  // Inner linear solves: Newton only needs steps accurate relative to
  // the outer residual; the standalone linear_solve default (1e-12)
  // sits at the double-precision floor on the finest grids.
  LinearSolveOptions linear{1e-11, 1e-9, 10000};
};

struct NewtonTrace {
  double t = 0.0;  // continuity parameter of this stage
  std::vector<double> residuals;     // accepted iterates, strictly decreasing
  std::vector<double> cone_margins;  // margins of accepted iterates
  std::vector<double> step_sizes;
  bool converged = false;
};

struct SolveReport {
  double h = 0.0;
  int nodes = 0;
  double initial_R = 0.0;
  std::vector<NewtonTrace> stages;
  double final_residual = 0.0;
  double min_cone_margin = 0.0;   // over all accepted iterates
  double min_eig_plus_one = 0.0;  // of the final Hessian field
  bool converged = false;
  std::string failure;
  double wall_ms = 0.0;
};

struct SolveResult {
  GridField u;
  SolveReport report;
};

// Continuity path from a supersolution initial guess, damped Newton at
// each stage; accepted steps must stay inside the cone (margin) and
// strictly decrease the residual sup-norm. On stagnation the continuity
// step is bisected up to max_bisect_depth; if that fails the report
// carries the last iterate and converged = false.
SolveResult solve_dirichlet(const HessianOperator& op, const ConvexDomain& domain,
                            const ScalarFn& f, const ScalarFn& phi, double h,
                            const SolveOptions& opts = {});

// Convenience: solve the sigma-sum equation through the shifted
// variables and map back (boundary data becomes phi + |x|^2/2).
SolveResult solve_dirichlet_shifted(const ConvexDomain& domain,
                                    const ScalarFn& f, const ScalarFn& phi,
                                    double h, const SolveOptions& opts = {});

}  // namespace twistpde
