#include "twistpde/rng.hpp"

namespace twistpde {

SymMatrix Sampler::spd(int n, double eps) {
  double r[SymMatrix::kMaxDim][SymMatrix::kMaxDim];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = normal();
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r[i][k] * r[j][k];
      m.set(i, j, s + (i == j ? eps : 0.0));
    }
  return m;
}

SymMatrix Sampler::sym_gaussian(int n) {
  SymMatrix m(n);
  for (int k = 0; k < m.packed_size(); ++k) m.set_packed(k, normal());
  return m;
}

std::vector<double> Sampler::uniform_vec(int n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(lo, hi);
  return v;
}

}  // namespace twistpde
