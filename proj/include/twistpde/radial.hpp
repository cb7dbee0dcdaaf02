#pragma once

#include <span>
#include <vector>

namespace twistpde {

// u(x) = A (|x|^2 - 1)/2 on the unit ball: constant Hessian A I,
// vanishing boundary trace.
struct RadialProfile {
  int n = 2;
  double A = 1.0;
  double value(double r2) const { return 0.5 * A * (r2 - 1.0); }
};

// P(A) = sum_{k=2}^n C(n,k) A^k = (1+A)^n - 1 - nA, evaluated through
// elem_sym on (A,...,A) so the oracle pins down the operator reading
// independently of any hand-derived formula.
double radial_polynomial(int n, double A);

// Unique A > 0 with P(A) = f_const, by bisection on [0, 1 + f_const]
// (P is strictly increasing there). Tolerance 1e-13.
double radial_coefficient(int n, double f_const);

// |prod(lam_i + 1) - sum(lam_i + 1) - (sum_{k=2}^n S_k(lam) - (n-1))|.
// Zero up to floating error for every input: the executable witness of
// the change-of-variables identity behind the shifted formulation.
double reduction_identity_check(std::span<const double> lam);

struct RootReport {
  std::vector<double> coefficients;    // ascending powers: c, -n, 0.., 1
  std::vector<double> positive_roots;  // ascending
  std::vector<double> cone_admissible_roots;  // roots with A > 1
  bool existence = false;  // cone-admissible root exists
  bool tangent = false;    // double root at the transition
};

// Positive real roots of A^n - nA + c (c > 0) by sign-change bisection
// on a log-spaced bracket grid augmented with the stationary point A = 1,
// so near-tangent dips are never missed. Cone admissibility is the
// radial specialization: the product of the other shifted eigenvalues,
// A^{n-1}, must exceed 1, i.e. A > 1.
RootReport counterexample_roots(int n, double c);

// c* where root existence switches off, located by bisection on c;
// equals n - 1 up to the stated tolerance.
double existence_transition(int n, double tol = 1e-9);

}  // namespace twistpde
