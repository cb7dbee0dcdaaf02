#pragma once

#include <vector>

#include "twistpde/sym_matrix.hpp"

namespace twistpde {

// Eigendecomposition M = Q diag(eigenvalues) Q^T with eigenvalues sorted
// ascending and Q orthogonal (columns are eigenvectors).
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<double> q;  // row-major n x n, column j = eigenvector j
  int n = 0;

  double q_at(int i, int j) const { return q[i * n + j]; }
  double orthogonality_defect() const;           // ||Q^T Q - I||_inf
  double reconstruction_defect(const SymMatrix& m) const;  // ||Q L Q^T - M||_inf
};

// Cyclic Jacobi diagonalization. Throws NumericalError (carrying the
// remaining off-diagonal magnitude) if `max_sweeps` does not suffice.
Spectrum eigen_sym(const SymMatrix& m, int max_sweeps = 50);

double min_eigenvalue(const SymMatrix& m);

// Diagonal of Q^T G Q, i.e. G expressed in the eigenbasis of the matrix
// that produced `s`.
std::vector<double> diagonal_in_basis(const SymMatrix& g, const Spectrum& s);

}  // namespace twistpde
