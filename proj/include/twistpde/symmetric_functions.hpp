#pragma once

#include <span>
#include <vector>

#include "twistpde/sym_matrix.hpp"

namespace twistpde {

// k-th elementary symmetric polynomial S_k(lam). S_0 = 1, S_1 = sum,
// S_n = product. Computed by the coefficient recurrence of
// prod_i (1 + lam_i t), which is backward stable for these sizes.
double elem_sym(int k, std::span<const double> lam);

// All coefficients c_0..c_n of det(B + t M); c_0 = det(B).
// Evaluated at n+1 Chebyshev nodes on [-1, 1] and solved through a
// precomputed Vandermonde factorization.
std::vector<double> char_coeffs(const SymMatrix& B, const SymMatrix& M);

// sigma_{k,B}(M): the t^k coefficient of det(B + t M), 1 <= k <= n.
// B must be symmetric positive definite.
double sigma_kB(int k, const SymMatrix& B, const SymMatrix& M);

bool is_spd(const SymMatrix& m, double margin = 0.0);

}  // namespace twistpde
