#include "twistpde/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "twistpde/errors.hpp"

namespace twistpde {

namespace {

double off_diagonal_norm(const double a[][SymMatrix::kMaxDim], int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

}  // namespace

Spectrum eigen_sym(const SymMatrix& m, int max_sweeps) {
  const int n = m.dim();
  if (!m.all_finite())
    throw PreconditionError("eigen_sym: matrix has non-finite entries");

  double a[SymMatrix::kMaxDim][SymMatrix::kMaxDim];
  double q[SymMatrix::kMaxDim][SymMatrix::kMaxDim];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a[i][j] = m(i, j);
      q[i][j] = (i == j) ? 1.0 : 0.0;
    }

  const double stop = 1e-15 * (1.0 + m.inf_norm());
  bool converged = (off_diagonal_norm(a, n) <= stop);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int r = p + 1; r < n; ++r) {
        double apr = a[p][r];
        if (std::abs(apr) <= 1e-300) continue;
        // Classic two-sided rotation zeroing a[p][r].
        double theta = (a[r][r] - a[p][p]) / (2.0 * apr);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akr = a[k][r];
          a[k][p] = c * akp - s * akr;
          a[k][r] = s * akp + c * akr;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], ark = a[r][k];
          a[p][k] = c * apk - s * ark;
          a[r][k] = s * apk + c * ark;
        }
        for (int k = 0; k < n; ++k) {
          double qkp = q[k][p], qkr = q[k][r];
          q[k][p] = c * qkp - s * qkr;
          q[k][r] = s * qkp + c * qkr;
        }
      }
    converged = (off_diagonal_norm(a, n) <= stop);
  }
  if (!converged) {
    double res = off_diagonal_norm(a, n);
    throw NumericalError(
        "eigen_sym: Jacobi iteration did not converge within " +
            std::to_string(max_sweeps) + " sweeps (off-diagonal " +
            std::to_string(res) + ")",
        res);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a[i][i] < a[j][j]; });

  Spectrum sp;
  sp.n = n;
  sp.eigenvalues.resize(n);
  sp.q.resize(n * n);
  for (int j = 0; j < n; ++j) {
    sp.eigenvalues[j] = a[order[j]][order[j]];
    for (int i = 0; i < n; ++i) sp.q[i * n + j] = q[i][order[j]];
  }
  return sp;
}

double Spectrum::orthogonality_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += q_at(k, i) * q_at(k, j);
      worst = std::max(worst, std::abs(s - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

double Spectrum::reconstruction_defect(const SymMatrix& m) const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += q_at(i, k) * eigenvalues[k] * q_at(j, k);
      worst = std::max(worst, std::abs(s - m(i, j)));
    }
  return worst;
}

double min_eigenvalue(const SymMatrix& m) {
  return eigen_sym(m).eigenvalues.front();
}

std::vector<double> diagonal_in_basis(const SymMatrix& g, const Spectrum& s) {
  const int n = s.n;
  std::vector<double> d(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        acc += s.q_at(i, j) * g(i, k) * s.q_at(k, j);
    d[j] = acc;
  }
  return d;
}

}  // namespace twistpde
