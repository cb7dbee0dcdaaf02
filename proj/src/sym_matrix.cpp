#include "twistpde/sym_matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "twistpde/errors.hpp"

namespace twistpde {

SymMatrix::SymMatrix(int n) : n_(n) {
  if (n < 1 || n > kMaxDim)
    throw PreconditionError("SymMatrix dimension must be in [1, 8], got " +
                            std::to_string(n));
  a_.fill(0.0);
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diag(std::initializer_list<double> d) {
  return diag(std::vector<double>(d));
}

SymMatrix SymMatrix::diag(const std::vector<double>& d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[i]);
  return m;
}

SymMatrix SymMatrix::from_rows(int n, const std::vector<double>& rows,
                               double sym_tol) {
  if (static_cast<int>(rows.size()) != n * n)
    throw PreconditionError("from_rows: expected " + std::to_string(n * n) +
                            " entries, got " + std::to_string(rows.size()));
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double a = rows[i * n + j], b = rows[j * n + i];
      if (std::abs(a - b) > sym_tol * (1.0 + std::abs(a) + std::abs(b)))
        throw PreconditionError("from_rows: input matrix is not symmetric");
      m.set(i, j, 0.5 * (a + b));
    }
  return m;
}

std::pair<int, int> SymMatrix::unpack(int idx) const {
  for (int i = 0; i < n_; ++i) {
    int row_len = n_ - i;
    if (idx < row_len) return {i, i + idx};
    idx -= row_len;
  }
  throw InternalError("SymMatrix::unpack: index out of range");
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  for (int k = 0; k < packed_size(); ++k) a_[k] += o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  for (int k = 0; k < packed_size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (int k = 0; k < packed_size(); ++k) a_[k] *= s;
  return *this;
}

SymMatrix SymMatrix::axpy(double s, const SymMatrix& P) const {
  SymMatrix r = *this;
  for (int k = 0; k < packed_size(); ++k) r.a_[k] += s * P.a_[k];
  return r;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::inf_norm() const {
  double m = 0.0;
  for (int k = 0; k < packed_size(); ++k) m = std::max(m, std::abs(a_[k]));
  return m;
}

double SymMatrix::dot(const SymMatrix& o) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * o(i, j);
  return s;
}

double SymMatrix::det() const {
  // Unpivoted size is at most 8; partial pivoting is plenty.
  double m[kMaxDim][kMaxDim];
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m[i][j] = (*this)(i, j);
  double d = 1.0;
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    for (int r = c + 1; r < n_; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n_; ++j) std::swap(m[piv][j], m[c][j]);
      d = -d;
    }
    d *= m[c][c];
    for (int r = c + 1; r < n_; ++r) {
      double f = m[r][c] / m[c][c];
      for (int j = c; j < n_; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return d;
}

bool SymMatrix::all_finite() const {
  for (int k = 0; k < packed_size(); ++k)
    if (!std::isfinite(a_[k])) return false;
  return true;
}

std::vector<double> SymMatrix::to_rows() const {
  std::vector<double> r(n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i * n_ + j] = (*this)(i, j);
  return r;
}

}  // namespace twistpde
