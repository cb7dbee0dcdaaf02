#pragma once

#include <vector>

#include "twistpde/rng.hpp"
#include "twistpde/sym_matrix.hpp"

namespace twistpde {

// Fully symmetric 3-tensor T[a][i][j] (third derivatives). Only the
// canonical entries with a <= i <= j are stored, so the permutation
// symmetry is structural.
class Tensor3 {
public:
  explicit Tensor3(int n);

  static int canonical_size(int n) { return n * (n + 1) * (n + 2) / 6; }
  static Tensor3 random_gaussian(int n, Sampler& smp);

  int dim() const { return n_; }
  double get(int a, int i, int j) const { return v_[index(a, i, j)]; }
  void set(int a, int i, int j, double val) { v_[index(a, i, j)] = val; }

  int size() const { return static_cast<int>(v_.size()); }
  double canonical(int idx) const { return v_[idx]; }
  void set_canonical(int idx, double val) { v_[idx] = val; }

  // The symmetric matrix slice T[a][.][.].
  SymMatrix slice(int a) const;

private:
  int index(int a, int i, int j) const;
  int n_;
  std::vector<double> v_;
};

}  // namespace twistpde
