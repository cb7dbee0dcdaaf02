#include "twistpde/dirichlet.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "twistpde/errors.hpp"
#include "twistpde/spectrum.hpp"

namespace twistpde {

double SpecOperator::cone_margin(const SymMatrix& M) const {
  ConeReport r = cone_check(spec_, M, 0.0);
  return r.margin_attained;
}

double KrylovShiftedOperator::value(const SymMatrix& N) const {
  return N.det() - N.trace();
}

SymMatrix KrylovShiftedOperator::gradient(const SymMatrix& N) const {
  auto det = [](const SymMatrix& X) { return X.det(); };
  SymMatrix g = fd_gradient(det, N, gradient_step(N));
  for (int i = 0; i < n_; ++i) g.add(i, i, -1.0);
  return g;
}

double KrylovShiftedOperator::cone_margin(const SymMatrix& N) const {
  Spectrum s = eigen_sym(N);
  SymMatrix g = gradient(N);
  std::vector<double> diag = diagonal_in_basis(g, s);
  double grad_slack = *std::min_element(diag.begin(), diag.end());
  return std::min(s.eigenvalues.front(), grad_slack);
}

GridField residual(const HessianOperator& op, const GridField& u,
                   const GridField& rhs) {
  if (u.size() != rhs.size())
    throw PreconditionError("residual: field shapes do not match");
  GridField r(u.grid_ptr());
  for (int p = 0; p < u.size(); ++p)
    r.value(p) = op.value(discrete_hessian(u, p)) - rhs.value(p);
  return r;
}

namespace {

struct Evaluation {
  HessianField H;
  GridField res;
  double res_norm = 0.0;
  double margin = 0.0;
};

Evaluation evaluate(const HessianOperator& op, const GridField& u,
                    const GridField& rhs) {
  Evaluation ev;
  ev.H = discrete_hessian_field(u);
  ev.res = GridField(u.grid_ptr());
  ev.margin = std::numeric_limits<double>::infinity();
  for (int p = 0; p < u.size(); ++p) {
    ev.res.value(p) = op.value(ev.H.H[p]) - rhs.value(p);
    ev.res_norm = std::max(ev.res_norm, std::abs(ev.res.value(p)));
    ev.margin = std::min(ev.margin, op.cone_margin(ev.H.H[p]));
  }
  return ev;
}

// One damped Newton run at a fixed right-hand side. Returns true on
// convergence; `u` and `ev` are advanced to the last accepted iterate.
bool newton_stage(const HessianOperator& op, GridField& u,
                  const GridField& rhs, Evaluation& ev,
                  const SolveOptions& opts, NewtonTrace& trace) {
  trace.residuals.push_back(ev.res_norm);
  trace.cone_margins.push_back(ev.margin);
  for (int it = 0; it < opts.max_newton_iter; ++it) {
    if (ev.res_norm <= opts.newton_tol) {
      trace.converged = true;
      return true;
    }
    std::vector<SymMatrix> L;
    L.reserve(u.size());
    for (int p = 0; p < u.size(); ++p) L.push_back(op.gradient(ev.H.H[p]));
    GridField neg_res(u.grid_ptr());  // zero boundary data for the update
    for (int p = 0; p < u.size(); ++p) neg_res.value(p) = -ev.res.value(p);
    GridField w = linear_solve(L, neg_res, opts.linear);

    double step = 1.0;
    bool accepted = false;
    while (step >= opts.min_step) {
      GridField trial = u;
      for (int p = 0; p < u.size(); ++p)
        trial.value(p) += step * w.value(p);
      Evaluation trial_ev = evaluate(op, trial, rhs);
      if (trial_ev.margin >= opts.cone_margin &&
          trial_ev.res_norm < ev.res_norm) {
        u = std::move(trial);
        ev = std::move(trial_ev);
        trace.residuals.push_back(ev.res_norm);
        trace.cone_margins.push_back(ev.margin);
        trace.step_sizes.push_back(step);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return false;  // stagnation
  }
  return ev.res_norm <= opts.newton_tol;
}

// Advance the continuity parameter from t0 (solved state in u/ev) to t1,
// bisecting the interval on stagnation.
bool advance(const HessianOperator& op, GridField& u, Evaluation& ev,
             const GridField& f, const GridField& g0, double t0, double t1,
             int depth, const SolveOptions& opts, SolveReport& report) {
  GridField rhs(u.grid_ptr());
  for (int p = 0; p < u.size(); ++p)
    rhs.value(p) = t1 * f.value(p) + (1.0 - t1) * g0.value(p);

  GridField u_save = u;
  NewtonTrace trace;
  trace.t = t1;
  Evaluation ev_work = evaluate(op, u, rhs);
  if (newton_stage(op, u, rhs, ev_work, opts, trace)) {
    report.stages.push_back(std::move(trace));
    ev = std::move(ev_work);
    return true;
  }
  report.stages.push_back(std::move(trace));
  if (depth >= opts.max_bisect_depth) {
    ev = std::move(ev_work);
    return false;
  }
  // Retry through the midpoint from the saved state.
  u = std::move(u_save);
  double tm = 0.5 * (t0 + t1);
  if (!advance(op, u, ev, f, g0, t0, tm, depth + 1, opts, report))
    return false;
  return advance(op, u, ev, f, g0, tm, t1, depth + 1, opts, report);
}

}  // namespace

SolveResult solve_dirichlet(const HessianOperator& op,
                            const ConvexDomain& domain, const ScalarFn& f,
                            const ScalarFn& phi, double h,
                            const SolveOptions& opts) {
  auto t_start = std::chrono::steady_clock::now();
  auto grid = Grid::build(domain, h);
  const int n = 2;

  GridField f_field = GridField::from_function(grid, f);
  double f_min = std::numeric_limits<double>::infinity();
  double f_max = -f_min;
  for (int p = 0; p < f_field.size(); ++p) {
    f_min = std::min(f_min, f_field.value(p));
    f_max = std::max(f_max, f_field.value(p));
    for (int d = 0; d < Grid::kDirs; ++d)
      if (grid->arm(p, d).neighbor < 0)
        f_min = std::min(f_min, f_field.cut_value(p, d));
  }
  if (!opts.allow_low_rhs && !(f_min > n - 1 + opts.rhs_floor_eps))
    throw PreconditionError(
        "solve_dirichlet: rhs must exceed n - 1 = " + std::to_string(n - 1) +
        " on the closed domain (min f = " + std::to_string(f_min) +
        "); set allow_low_rhs to attempt anyway");

  // Initial guess R*rho + phi: matches the boundary data exactly and is
  // pushed up the cone until it dominates f.
  double R = 1.0;
  GridField u;
  Evaluation ev;
  auto make_guess = [&](double Rv) {
    return GridField::with_boundary(
        grid,
        [&](double x, double y) { return Rv * domain.rho(x, y) + phi(x, y); },
        phi);
  };
  for (;; R *= 2.0) {
    if (R > opts.supersolution_R_cap)
      throw NumericalError(
          "solve_dirichlet: no supersolution initial guess below R = 2^16 "
          "(rhs too large or boundary data too wild)");
    u = make_guess(R);
    HessianField H = discrete_hessian_field(u);
    bool ok = true;
    for (int p = 0; p < u.size() && ok; ++p)
      ok = op.cone_margin(H.H[p]) >= std::max(opts.cone_margin, 1e-6) &&
           op.value(H.H[p]) >= f_max;
    if (ok) break;
  }

  SolveReport report;
  report.h = h;
  report.nodes = grid->num_nodes();
  report.initial_R = R;

  // rhs at t = 0 is the value of the initial guess itself, so the path
  // starts from an exactly solved state.
  GridField g0(grid);
  {
    HessianField H = discrete_hessian_field(u);
    for (int p = 0; p < u.size(); ++p) g0.value(p) = op.value(H.H[p]);
  }

  GridField zero_rhs = g0;
  ev = evaluate(op, u, zero_rhs);

  bool ok = true;
  const int N = std::max(1, opts.continuity_steps);
  for (int s = 1; s <= N && ok; ++s) {
    double t0 = double(s - 1) / N, t1 = double(s) / N;
    ok = advance(op, u, ev, f_field, g0, t0, t1, 0, opts, report);
  }

  report.converged = ok;
  if (!ok) report.failure = "newton stagnation (step below min_step)";
  report.final_residual = ev.res_norm;
  report.min_cone_margin = std::numeric_limits<double>::infinity();
  for (const NewtonTrace& tr : report.stages)
    for (double m : tr.cone_margins)
      report.min_cone_margin = std::min(report.min_cone_margin, m);
  double mep1 = std::numeric_limits<double>::infinity();
  for (int p = 0; p < u.size(); ++p)
    mep1 = std::min(mep1, min_eigenvalue(ev.H.H[p]) + 1.0);
  report.min_eig_plus_one = mep1;
  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  return {std::move(u), std::move(report)};
}

SolveResult solve_dirichlet_shifted(const ConvexDomain& domain,
                                    const ScalarFn& f, const ScalarFn& phi,
                                    double h, const SolveOptions& opts) {
  const int n = 2;
  if (!opts.allow_low_rhs) {
    // Same hypothesis as the direct route, checked up front.
    auto grid = Grid::build(domain, h);
    GridField probe = GridField::from_function(grid, f);
    double fmin = std::numeric_limits<double>::infinity();
    for (int p = 0; p < probe.size(); ++p)
      fmin = std::min(fmin, probe.value(p));
    if (!(fmin > n - 1 + opts.rhs_floor_eps))
      throw PreconditionError(
          "solve_dirichlet_shifted: rhs must exceed n - 1 = " +
          std::to_string(n - 1) + " on the closed domain");
  }
  KrylovShiftedOperator op(n);
  auto f_shift = [&](double x, double y) { return f(x, y) - (n - 1); };
  auto phi_shift = [&](double x, double y) {
    return phi(x, y) + 0.5 * (x * x + y * y);
  };
  SolveOptions o = opts;
  o.allow_low_rhs = true;  // the shifted rhs only needs positivity
  SolveResult r = solve_dirichlet(op, domain, f_shift, phi_shift, h, o);
  SolveResult out;
  out.u = krylov_unreduce(r.u);
  out.report = std::move(r.report);
  return out;
}

}  // namespace twistpde
