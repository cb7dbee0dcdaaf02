#include "twistpde/symmetric_functions.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include "twistpde/errors.hpp"
#include "twistpde/spectrum.hpp"

namespace twistpde {

double elem_sym(int k, std::span<const double> lam) {
  const int n = static_cast<int>(lam.size());
  if (k < 0 || k > n)
    throw PreconditionError("elem_sym: order k = " + std::to_string(k) +
                            " outside [0, " + std::to_string(n) + "]");
  std::array<double, SymMatrix::kMaxDim + 1> e{};
  e[0] = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(i + 1, k); j >= 1; --j) e[j] += lam[i] * e[j - 1];
  return e[k];
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Inverse Vandermonde at the n+1 Chebyshev nodes of [-1, 1], cached per n.
struct NodeTable {
  std::array<double, SymMatrix::kMaxDim + 1> nodes;
  // vinv[k][j]: coefficient k from sample j.
  std::array<std::array<double, SymMatrix::kMaxDim + 1>, SymMatrix::kMaxDim + 1>
      vinv;
};

NodeTable build_table(int n) {
  const int m = n + 1;
  NodeTable t{};
  for (int j = 0; j < m; ++j)
    t.nodes[j] = std::cos((2.0 * j + 1.0) * kPi / (2.0 * m));

  // Invert V[j][k] = t_j^k by Gauss-Jordan with partial pivoting.
  double aug[SymMatrix::kMaxDim + 1][2 * (SymMatrix::kMaxDim + 1)] = {};
  for (int j = 0; j < m; ++j) {
    double p = 1.0;
    for (int k = 0; k < m; ++k) {
      aug[j][k] = p;
      p *= t.nodes[j];
    }
    aug[j][m + j] = 1.0;
  }
  for (int c = 0; c < m; ++c) {
    int piv = c;
    for (int r = c + 1; r < m; ++r)
      if (std::abs(aug[r][c]) > std::abs(aug[piv][c])) piv = r;
    if (aug[piv][c] == 0.0)
      throw InternalError("char_coeffs: singular interpolation system");
    if (piv != c)
      for (int k = 0; k < 2 * m; ++k) std::swap(aug[piv][k], aug[c][k]);
    double d = aug[c][c];
    for (int k = 0; k < 2 * m; ++k) aug[c][k] /= d;
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      double f = aug[r][c];
      if (f == 0.0) continue;
      for (int k = 0; k < 2 * m; ++k) aug[r][k] -= f * aug[c][k];
    }
  }
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) t.vinv[k][j] = aug[k][m + j];
  return t;
}

const NodeTable& table_for(int n) {
  static std::array<NodeTable, SymMatrix::kMaxDim + 1> tables;
  static std::once_flag flags[SymMatrix::kMaxDim + 1];
  std::call_once(flags[n], [n] { tables[n] = build_table(n); });
  return tables[n];
}

}  // namespace

std::vector<double> char_coeffs(const SymMatrix& B, const SymMatrix& M) {
  const int n = M.dim();
  if (B.dim() != n)
    throw PreconditionError("char_coeffs: dimension mismatch");
  const NodeTable& t = table_for(n);
  std::array<double, SymMatrix::kMaxDim + 1> samples{};
  for (int j = 0; j <= n; ++j) samples[j] = B.axpy(t.nodes[j], M).det();
  std::vector<double> c(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) acc += t.vinv[k][j] * samples[j];
    c[k] = acc;
  }
  return c;
}

double sigma_kB(int k, const SymMatrix& B, const SymMatrix& M) {
  const int n = M.dim();
  if (k < 1 || k > n)
    throw PreconditionError("sigma_kB: order k = " + std::to_string(k) +
                            " outside [1, " + std::to_string(n) + "]");
  return char_coeffs(B, M)[k];
}

bool is_spd(const SymMatrix& m, double margin) {
  return min_eigenvalue(m) > margin;
}

}  // namespace twistpde
