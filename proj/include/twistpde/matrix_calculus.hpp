#pragma once

#include <utility>

#include "twistpde/operator_spec.hpp"
#include "twistpde/sym_matrix.hpp"

namespace twistpde {

// Finite-difference steps, scaled by the matrix magnitude to balance
// truncation against cancellation at double precision.
inline double gradient_step(const SymMatrix& M) {
  return 1e-6 * (1.0 + M.inf_norm());
}
inline double hessian_step(const SymMatrix& M) {
  return 1e-4 * (1.0 + M.inf_norm());
}

// Gradient dF/dM in the trace pairing: dF(M)[P] = sum_ij G_ij P_ij for
// symmetric P. Off-diagonal entries are perturbed symmetrically and the
// quotient halved so that F = tr(A M) yields A.
template <class F>
SymMatrix fd_gradient(F&& f, const SymMatrix& M, double h) {
  SymMatrix g(M.dim());
  for (int idx = 0; idx < M.packed_size(); ++idx) {
    auto [i, j] = M.unpack(idx);
    SymMatrix up = M, dn = M;
    up.set_packed(idx, M.packed(idx) + h);
    dn.set_packed(idx, M.packed(idx) - h);
    double d = (f(up) - f(dn)) / (2.0 * h);
    g.set_packed(idx, i == j ? d : 0.5 * d);
  }
  return g;
}

// Second directional derivative d^2/ds^2 F(M + sP) at s = 0, five-point
// central stencil (exact for polynomials of degree <= 5 in s).
template <class F>
double fd_hessian_form(F&& f, const SymMatrix& M, const SymMatrix& P,
                       double h) {
  double f0 = f(M);
  double fp = f(M.axpy(h, P)), fm = f(M.axpy(-h, P));
  double fpp = f(M.axpy(2 * h, P)), fmm = f(M.axpy(-2 * h, P));
  return (-fpp + 16.0 * fp - 30.0 * f0 + 16.0 * fm - fmm) / (12.0 * h * h);
}

// Bilinear Hessian form by polarization of the quadratic one.
template <class F>
double fd_bilinear_form(F&& f, const SymMatrix& M, const SymMatrix& P,
                        const SymMatrix& R, double h) {
  SymMatrix plus = P, minus = P;
  plus += R;
  minus -= R;
  return 0.25 * (fd_hessian_form(f, M, plus, h) -
                 fd_hessian_form(f, M, minus, h));
}

// Gradient of one weighted concave term (central differences).
SymMatrix term_gradient(const OperatorSpec& spec, int alpha,
                        const SymMatrix& M);
// Gradient of the whole operator. The trace part differentiates exactly
// to A; the sigma terms use central differences.
SymMatrix op_gradient(const OperatorSpec& spec, const SymMatrix& M);

double term_hessian_form(const OperatorSpec& spec, int alpha,
                         const SymMatrix& M, const SymMatrix& P);
double term_hessian_bilinear(const OperatorSpec& spec, int alpha,
                             const SymMatrix& M, const SymMatrix& P,
                             const SymMatrix& R);
// Whole operator; the trace part is linear and contributes zero.
double op_hessian_form(const OperatorSpec& spec, const SymMatrix& M,
                       const SymMatrix& P);

struct ConeReport {
  bool inside = false;
  double margin_attained = 0.0;  // min of the two slack quantities
};

// Ellipticity-cone membership: min eigenvalue of M must clear -1 by
// `margin`, and the operator gradient expressed in the eigenbasis of M
// must have diagonal at least `margin`.
ConeReport cone_check(const OperatorSpec& spec, const SymMatrix& M,
                      double margin);

}  // namespace twistpde
