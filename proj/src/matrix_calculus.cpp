#include "twistpde/matrix_calculus.hpp"

#include <algorithm>

#include "twistpde/errors.hpp"
#include "twistpde/spectrum.hpp"

namespace twistpde {

SymMatrix term_gradient(const OperatorSpec& spec, int alpha,
                        const SymMatrix& M) {
  auto f = [&](const SymMatrix& X) { return spec.term_value(alpha, X); };
  return fd_gradient(f, M, gradient_step(M));
}

SymMatrix op_gradient(const OperatorSpec& spec, const SymMatrix& M) {
  SymMatrix g = spec.has_convex_part() ? spec.convex_A() : SymMatrix(M.dim());
  for (int a = 0; a < spec.term_count(); ++a) g += term_gradient(spec, a, M);
  return g;
}

double term_hessian_form(const OperatorSpec& spec, int alpha,
                         const SymMatrix& M, const SymMatrix& P) {
  auto f = [&](const SymMatrix& X) { return spec.term_value(alpha, X); };
  return fd_hessian_form(f, M, P, hessian_step(M));
}

double term_hessian_bilinear(const OperatorSpec& spec, int alpha,
                             const SymMatrix& M, const SymMatrix& P,
                             const SymMatrix& R) {
  auto f = [&](const SymMatrix& X) { return spec.term_value(alpha, X); };
  return fd_bilinear_form(f, M, P, R, hessian_step(M));
}

double op_hessian_form(const OperatorSpec& spec, const SymMatrix& M,
                       const SymMatrix& P) {
  // The trace part is linear: zero second derivative, exactly.
  double v = 0.0;
  for (int a = 0; a < spec.term_count(); ++a)
    v += term_hessian_form(spec, a, M, P);
  return v;
}

ConeReport cone_check(const OperatorSpec& spec, const SymMatrix& M,
                      double margin) {
  if (!(margin >= 0.0))
    throw PreconditionError("cone_check: margin must be >= 0");
  if (M.dim() != spec.dim())
    throw PreconditionError("cone_check: dimension mismatch");
  Spectrum s = eigen_sym(M);
  SymMatrix g = op_gradient(spec, M);
  std::vector<double> diag = diagonal_in_basis(g, s);
  double grad_slack = *std::min_element(diag.begin(), diag.end());
  double eig_slack = s.eigenvalues.front() + 1.0;
  ConeReport r;
  r.margin_attained = std::min(eig_slack, grad_slack);
  r.inside = r.margin_attained >= margin;
  return r;
}

}  // namespace twistpde
