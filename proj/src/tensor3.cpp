#include "twistpde/tensor3.hpp"

#include <algorithm>

#include "twistpde/errors.hpp"

namespace twistpde {

Tensor3::Tensor3(int n) : n_(n) {
  if (n < 1 || n > SymMatrix::kMaxDim)
    throw PreconditionError("Tensor3: dimension must be in [1, 8]");
  v_.assign(canonical_size(n), 0.0);
}

int Tensor3::index(int a, int i, int j) const {
  int s[3] = {a, i, j};
  std::sort(s, s + 3);
  if (s[0] < 0 || s[2] >= n_)
    throw PreconditionError("Tensor3: index out of range");
  // Rank of the sorted triple (p <= q <= r) among combinations with
  // repetition, lexicographic.
  auto c2 = [](long m) { return m * (m + 1) / 2; };
  auto c3 = [](long m) { return m * (m + 1) * (m + 2) / 6; };
  long p = s[0], q = s[1], r = s[2], n = n_;
  long idx = c3(n) - c3(n - p);            // triples starting below p
  idx += c2(n - p) - c2(n - q);            // second index between p and q
  idx += r - q;
  return static_cast<int>(idx);
}

Tensor3 Tensor3::random_gaussian(int n, Sampler& smp) {
  Tensor3 t(n);
  for (int k = 0; k < t.size(); ++k) t.set_canonical(k, smp.normal());
  return t;
}

SymMatrix Tensor3::slice(int a) const {
  SymMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) m.set(i, j, get(a, i, j));
  return m;
}

}  // namespace twistpde
