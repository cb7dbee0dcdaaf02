#include "twistpde/linear_solver.hpp"

#include <cmath>
#include <cstdio>

#include "twistpde/errors.hpp"

namespace twistpde {

void StencilSystem::apply(const std::vector<double>& x,
                          std::vector<double>& y) const {
  y.assign(n, 0.0);
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int k = rowptr[r]; k < rowptr[r + 1]; ++k) acc += val[k] * x[col[k]];
    y[r] = acc;
  }
}

StencilSystem assemble(const std::vector<SymMatrix>& L, const GridField& rhs) {
  const Grid& g = rhs.grid();
  const int n = g.num_nodes();
  if (static_cast<int>(L.size()) != n)
    throw PreconditionError("assemble: coefficient field size mismatch");

  StencilSystem sys;
  sys.n = n;
  sys.rowptr.assign(n + 1, 0);
  sys.rhs.assign(n, 0.0);
  sys.col.reserve(9 * n);
  sys.val.reserve(9 * n);

  // Scratch row: up to 9 entries (center + 8 arms).
  for (int p = 0; p < n; ++p) {
    sys.rhs[p] = rhs.value(p);
    double diag = 0.0;
    int cols[8];
    double vals[8];
    int m = 0;
    // Line weights: x -> l11, y -> l22, diag+ -> l12, diag- -> -l12.
    const double lw[4] = {L[p](0, 0), L[p](1, 1), L[p](0, 1), -L[p](0, 1)};
    for (int line = 0; line < 4; ++line) {
      double kappa = lw[line];
      if (kappa == 0.0) continue;
      int dplus = 2 * line, dminus = 2 * line + 1;
      double len = g.arm_length(dplus);
      const Grid::Arm& ap = g.arm(p, dplus);
      const Grid::Arm& am = g.arm(p, dminus);
      double sp = ap.neighbor >= 0 ? len : ap.theta * len;
      double sm = am.neighbor >= 0 ? len : am.theta * len;
      double cp = 2.0 * kappa / (sp * (sp + sm));
      double cm = 2.0 * kappa / (sm * (sp + sm));
      diag += -2.0 * kappa / (sp * sm);
      if (ap.neighbor >= 0) {
        cols[m] = ap.neighbor;
        vals[m++] = cp;
      } else {
        sys.rhs[p] -= cp * rhs.cut_value(p, dplus);
      }
      if (am.neighbor >= 0) {
        cols[m] = am.neighbor;
        vals[m++] = cm;
      } else {
        sys.rhs[p] -= cm * rhs.cut_value(p, dminus);
      }
    }
    sys.col.push_back(p);
    sys.val.push_back(diag);
    for (int k = 0; k < m; ++k) {
      sys.col.push_back(cols[k]);
      sys.val.push_back(vals[k]);
    }
    sys.rowptr[p + 1] = static_cast<int>(sys.col.size());
  }
  return sys;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

double bicgstab(const StencilSystem& sys_in, std::vector<double>& x,
                const LinearSolveOptions& opts) {
  const int n = sys_in.n;
  x.assign(n, 0.0);

  // Diagonal preconditioning as row equilibration: the cut rows carry
  // coefficients ~1/(theta h^2) and would otherwise dominate both the
  // norm and the rounding floor.
  StencilSystem sys = sys_in;
  std::vector<double> scale(n, 1.0);
  for (int r = 0; r < n; ++r)
    for (int k = sys.rowptr[r]; k < sys.rowptr[r + 1]; ++k)
      if (sys.col[k] == r && sys.val[k] != 0.0) scale[r] = 1.0 / sys.val[k];
  for (int r = 0; r < n; ++r) {
    for (int k = sys.rowptr[r]; k < sys.rowptr[r + 1]; ++k)
      sys.val[k] *= scale[r];
    sys.rhs[r] *= scale[r];
  }
  std::vector<double> diag_inv(n, 1.0);  // unit diagonal after scaling

  const double bnorm = norm2(sys.rhs);
  if (bnorm == 0.0) return 0.0;

  std::vector<double> r = sys.rhs, r0 = sys.rhs;
  std::vector<double> p(n, 0.0), v(n, 0.0), s(n), t(n), phat(n), shat(n);
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  double rel = norm2(r) / bnorm;

  for (int it = 0; it < opts.max_iter && rel > opts.rel_tol; ++it) {
    double rho1 = dot(r0, r);
    if (std::abs(rho1) < 1e-300) {  // restart on breakdown
      r0 = r;
      rho1 = dot(r0, r);
      p.assign(n, 0.0);
      v.assign(n, 0.0);
      omega = 1.0;
      rho = 1.0;
    }
    double beta = (rho1 / rho) * (alpha / omega);
    for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    for (int i = 0; i < n; ++i) phat[i] = diag_inv[i] * p[i];
    sys.apply(phat, v);
    double r0v = dot(r0, v);
    if (std::abs(r0v) < 1e-300) {
      rho = rho1;
      continue;
    }
    alpha = rho1 / r0v;
    for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    if (norm2(s) / bnorm <= opts.rel_tol) {
      for (int i = 0; i < n; ++i) x[i] += alpha * phat[i];
      r = s;
      rel = norm2(r) / bnorm;
      break;
    }
    for (int i = 0; i < n; ++i) shat[i] = diag_inv[i] * s[i];
    sys.apply(shat, t);
    double tt = dot(t, t);
    if (tt < 1e-300) {
      for (int i = 0; i < n; ++i) x[i] += alpha * phat[i];
      r = s;
      rel = norm2(r) / bnorm;
      rho = rho1;
      continue;
    }
    omega = dot(t, s) / tt;
    for (int i = 0; i < n; ++i) x[i] += alpha * phat[i] + omega * shat[i];
    for (int i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
    if ((it + 1) % 100 == 0) {
      // Replace the recursively updated residual with the true one so
      // drift cannot fake convergence or stall it.
      sys.apply(x, t);
      for (int i = 0; i < n; ++i) r[i] = sys.rhs[i] - t[i];
    }
    rel = norm2(r) / bnorm;
    rho = rho1;
  }

  // True residual of the scaled system, not the recursively updated one.
  std::vector<double> ax(n);
  sys.apply(x, ax);
  for (int i = 0; i < n; ++i) ax[i] = sys.rhs[i] - ax[i];
  rel = norm2(ax) / bnorm;
  if (rel > opts.accept_tol) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "linear solve: BiCGStab stopped at relative residual %.3e "
                  "after %d iterations",
                  rel, opts.max_iter);
    throw NumericalError(buf, rel);
  }
  return rel;
}

GridField linear_solve(const std::vector<SymMatrix>& L, const GridField& rhs,
                       const LinearSolveOptions& opts) {
  StencilSystem sys = assemble(L, rhs);
  std::vector<double> x;
  bicgstab(sys, x, opts);
  GridField w = rhs;  // keep the boundary data
  for (int p = 0; p < w.size(); ++p) w.value(p) = x[p];
  return w;
}

}  // namespace twistpde
