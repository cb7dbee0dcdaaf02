#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace twistpde {

// Dense symmetric n x n matrix, 2 <= n <= 8. Only the upper triangle is
// stored, so M(i,j) == M(j,i) holds structurally rather than numerically.
class SymMatrix {
public:
  static constexpr int kMaxDim = 8;
  static constexpr int kMaxPacked = kMaxDim * (kMaxDim + 1) / 2;

  explicit SymMatrix(int n);
  SymMatrix() : SymMatrix(2) {}

  static SymMatrix identity(int n);
  static SymMatrix diag(std::initializer_list<double> d);
  static SymMatrix diag(const std::vector<double>& d);
  // Row-major full matrix; throws PreconditionError if not symmetric
  // within `sym_tol` (entries are averaged into the stored triangle).
  static SymMatrix from_rows(int n, const std::vector<double>& rows,
                             double sym_tol = 1e-12);

  int dim() const { return n_; }
  int packed_size() const { return n_ * (n_ + 1) / 2; }

  double operator()(int i, int j) const { return a_[pack(i, j)]; }
  void set(int i, int j, double v) { a_[pack(i, j)] = v; }
  void add(int i, int j, double v) { a_[pack(i, j)] += v; }

  double packed(int idx) const { return a_[idx]; }
  void set_packed(int idx, double v) { a_[idx] = v; }
  // (i, j) with i <= j for packed slot `idx`.
  std::pair<int, int> unpack(int idx) const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

  // this + s * P
  SymMatrix axpy(double s, const SymMatrix& P) const;

  double trace() const;
  double inf_norm() const;  // entrywise max absolute value
  double det() const;       // LU with partial pivoting
  // Frobenius inner product tr(A * B) over full matrices.
  double dot(const SymMatrix& o) const;

  bool all_finite() const;
  std::vector<double> to_rows() const;  // row-major n*n

private:
  int pack(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }
  int n_;
  std::array<double, kMaxPacked> a_;
};

}  // namespace twistpde
