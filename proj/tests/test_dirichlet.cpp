#include <doctest.h>

#include <cmath>

#include "twistpde/dirichlet.hpp"
#include "twistpde/errors.hpp"
#include "twistpde/radial.hpp"
#include "twistpde/rng.hpp"

using namespace twistpde;

namespace {

double sup_error_vs(const GridField& u, const ScalarFn& exact) {
  double err = 0.0;
  for (int p = 0; p < u.size(); ++p) {
    const Grid::Node& nd = u.grid().node(p);
    err = std::max(err, std::abs(u.value(p) - exact(nd.x, nd.y)));
  }
  return err;
}

// Non-quadratic radial exact solution of det(D^2 u) = f on the unit
// disk: u = A(r^2-1)/2 + B(r^4-1)/4 has det(D^2 u) = (A+3Br^2)(A+Br^2).
struct QuarticRadial {
  double A = 2.0, B = 0.5;
  double u(double x, double y) const {
    double r2 = x * x + y * y;
    return 0.5 * A * (r2 - 1.0) + 0.25 * B * (r2 * r2 - 1.0);
  }
  double f(double x, double y) const {
    double r2 = x * x + y * y;
    return (A + 3.0 * B * r2) * (A + B * r2);
  }
};

}  // namespace

TEST_CASE("residual basics") {
  auto grid = Grid::build(ConvexDomain::disk(1.0), 1.0 / 12);
  SpecOperator op(OperatorSpec::sigma_sum(2));

  // Planted quadratic: residual vanishes everywhere (stencils exact).
  auto quad = [](double x, double y) {
    return x * x + 0.75 * y * y + 0.2 * x * y;
  };
  GridField u = GridField::from_function(grid, quad);
  SymMatrix Hq(2);
  Hq.set(0, 0, 2.0);
  Hq.set(1, 1, 1.5);
  Hq.set(0, 1, 0.2);
  double fval = op.value(Hq);
  GridField rhs = GridField::from_function(
      grid, [&](double, double) { return fval; });
  GridField r = residual(op, u, rhs);
  CHECK(r.sup_norm() <= 1e-9);

  // u = 0 gives residual -f.
  GridField zero(grid);
  GridField r0 = residual(op, zero, rhs);
  for (int p = 0; p < r0.size(); ++p)
    CHECK(r0.value(p) == doctest::Approx(-fval));
}

TEST_CASE("radial oracle field has small residual under the preset") {
  SpecOperator op(OperatorSpec::sigma_sum(2));
  RadialProfile prof{2, std::sqrt(3.0)};
  for (double h : {1.0 / 8, 1.0 / 16}) {
    auto grid = Grid::build(ConvexDomain::disk(1.0), h);
    GridField u = radial_field(prof, grid);
    GridField rhs = GridField::from_function(
        grid, [](double, double) { return 3.0; });
    GridField r = residual(op, u, rhs);
    CHECK(r.sup_norm() <= 10.0 * h * h);  // exact continuum solution
  }
}

TEST_CASE("solver recovers the radial solution for constant f") {
  SpecOperator op(OperatorSpec::sigma_sum(2));
  RadialProfile prof{2, std::sqrt(3.0)};
  auto exact = [&](double x, double y) { return prof.value(x * x + y * y); };
  SolveResult sol = solve_dirichlet(
      op, ConvexDomain::disk(1.0), [](double, double) { return 3.0; },
      [](double, double) { return 0.0; }, 1.0 / 16);
  REQUIRE(sol.report.converged);
  CHECK(sol.report.final_residual <= 1e-10);
  CHECK(sup_error_vs(sol.u, exact) <= 5.0 * (1.0 / 256) * (1.0 + 1.0));
  CHECK(sol.report.min_cone_margin >= 1e-8);

  // Reported residual equals an independent re-evaluation.
  GridField rhs = GridField::from_function(
      sol.u.grid_ptr(), [](double, double) { return 3.0; });
  GridField r = residual(op, sol.u, rhs);
  CHECK(std::abs(r.sup_norm() - sol.report.final_residual) <= 1e-14);

  // Discrete radial symmetry: dihedral-related nodes agree.
  const Grid& g = sol.u.grid();
  for (int p = 0; p < sol.u.size(); ++p) {
    const Grid::Node& nd = g.node(p);
    for (auto [qi, qj] : {std::pair{-nd.i - 1, nd.j}, std::pair{nd.j, nd.i},
                          std::pair{nd.i, -nd.j - 1}}) {
      int q = g.find(qi, qj);
      REQUIRE(q >= 0);
      CHECK(std::abs(sol.u.value(p) - sol.u.value(q)) <= 1e-10);
    }
  }
}

TEST_CASE("grid convergence is second order on a non-quadratic solution") {
  QuarticRadial qr;
  SpecOperator op(OperatorSpec::sigma_sum(2));
  auto f = [&](double x, double y) { return qr.f(x, y); };
  auto phi = [](double, double) { return 0.0; };
  auto exact = [&](double x, double y) { return qr.u(x, y); };
  double e16 = 0, e32 = 0, e64 = 0;
  for (double* e : {&e16, &e32, &e64}) (void)e;
  {
    SolveResult s = solve_dirichlet(op, ConvexDomain::disk(1.0), f, phi, 1.0 / 16);
    REQUIRE(s.report.converged);
    e16 = sup_error_vs(s.u, exact);
  }
  {
    SolveResult s = solve_dirichlet(op, ConvexDomain::disk(1.0), f, phi, 1.0 / 32);
    REQUIRE(s.report.converged);
    e32 = sup_error_vs(s.u, exact);
  }
  {
    SolveResult s = solve_dirichlet(op, ConvexDomain::disk(1.0), f, phi, 1.0 / 64);
    REQUIRE(s.report.converged);
    e64 = sup_error_vs(s.u, exact);
  }
  CHECK(e16 / e32 >= 3.5);
  CHECK(e16 / e32 <= 4.5);
  CHECK(e32 / e64 >= 3.5);
  CHECK(e32 / e64 <= 4.5);
}

TEST_CASE("manufactured quadratic is recovered to stencil exactness") {
  auto quad = [](double x, double y) {
    return x * x + 0.75 * y * y + 0.25 * x * y - 0.1 * x + 0.05;
  };
  SymMatrix Hq(2);
  Hq.set(0, 0, 2.0);
  Hq.set(1, 1, 1.5);
  Hq.set(0, 1, 0.25);
  for (const char* preset : {"sksum", "detlap"}) {
    SpecOperator op(OperatorSpec::preset(preset, 2));
    double fval = op.value(Hq);
    SolveResult sol = solve_dirichlet(
        op, ConvexDomain::disk(1.0),
        [&](double, double) { return fval; }, quad, 1.0 / 16);
    REQUIRE(sol.report.converged);
    CHECK(sup_error_vs(sol.u, quad) <= 1e-9);
  }
}

TEST_CASE("residual decreases strictly within each stage") {
  SpecOperator op(OperatorSpec::det_plus_laplacian(2));
  SolveResult sol = solve_dirichlet(
      op, ConvexDomain::disk(1.0),
      [](double x, double y) { return 4.0 + x * x + y * y; },
      [](double, double) { return 0.0; }, 1.0 / 12);
  REQUIRE(sol.report.converged);
  for (const NewtonTrace& tr : sol.report.stages) {
    for (size_t i = 1; i < tr.residuals.size(); ++i)
      CHECK(tr.residuals[i] < tr.residuals[i - 1]);
    for (double m : tr.cone_margins) CHECK(m >= 1e-8);
  }
  CHECK(sol.report.min_eig_plus_one > 0.0);
}

TEST_CASE("ellipse regression instance") {
  SpecOperator op(OperatorSpec::sigma_sum(2));
  SolveResult sol = solve_dirichlet(
      op, ConvexDomain::ellipse(1.0, 0.7),
      [](double, double) { return 3.0; }, [](double, double) { return 0.0; },
      1.0 / 16);
  REQUIRE(sol.report.converged);
  CHECK(sol.report.final_residual <= 1e-10);
  // Center value recorded at first build (h = 1/16, f = 3).
  int p = sol.u.grid().find(0, 0);
  REQUIRE(p >= 0);
  CHECK(sol.u.value(p) == doctest::Approx(-0.604417590341).epsilon(1e-8));
}

TEST_CASE("u-form and shifted v-form solves agree") {
  auto f = [](double, double) { return 3.0; };
  auto phi = [](double, double) { return 0.0; };
  SpecOperator direct(OperatorSpec::sigma_sum(2));
  SolveResult a = solve_dirichlet(direct, ConvexDomain::disk(1.0), f, phi,
                                  1.0 / 16);
  SolveResult b = solve_dirichlet_shifted(ConvexDomain::disk(1.0), f, phi,
                                          1.0 / 16);
  REQUIRE(a.report.converged);
  REQUIRE(b.report.converged);
  double diff = 0.0;
  for (int p = 0; p < a.u.size(); ++p)
    diff = std::max(diff, std::abs(a.u.value(p) - b.u.value(p)));
  CHECK(diff <= 1e-8);
}

TEST_CASE("distinct initializations converge to the same field") {
  SpecOperator op(OperatorSpec::sigma_sum(2));
  auto f = [](double, double) { return 3.0; };
  auto phi = [](double, double) { return 0.0; };
  SolveOptions base;
  SolveResult a = solve_dirichlet(op, ConvexDomain::disk(1.0), f, phi,
                                  1.0 / 12, base);
  // Perturb the path: different continuity granularity changes every
  // intermediate state but must land on the same discrete solution.
  SolveOptions alt = base;
  alt.continuity_steps = 3;
  SolveResult b = solve_dirichlet(op, ConvexDomain::disk(1.0), f, phi,
                                  1.0 / 12, alt);
  REQUIRE(a.report.converged);
  REQUIRE(b.report.converged);
  double diff = 0.0;
  for (int p = 0; p < a.u.size(); ++p)
    diff = std::max(diff, std::abs(a.u.value(p) - b.u.value(p)));
  CHECK(diff <= 1e-8);
}

TEST_CASE("rhs below the threshold is rejected with the hypothesis cited") {
  SpecOperator op(OperatorSpec::sigma_sum(2));
  try {
    solve_dirichlet(op, ConvexDomain::disk(1.0),
                    [](double, double) { return 0.0; },
                    [](double, double) { return 0.0; }, 1.0 / 8);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("n - 1") != std::string::npos);
  }
}

TEST_CASE("failure semantics below the threshold with the override") {
  // f < 0 has no admissible solution; the solver must report failure
  // with the last iterate rather than looping.
  SpecOperator op(OperatorSpec::sigma_sum(2));
  SolveOptions opts;
  opts.allow_low_rhs = true;
  opts.continuity_steps = 2;
  opts.max_bisect_depth = 2;
  opts.max_newton_iter = 12;
  SolveResult sol = solve_dirichlet(op, ConvexDomain::disk(1.0),
                                    [](double, double) { return -1.0; },
                                    [](double, double) { return 0.0; },
                                    1.0 / 8, opts);
  CHECK_FALSE(sol.report.converged);
  CHECK(!sol.report.failure.empty());
  CHECK(sol.u.all_finite());
}

TEST_CASE("supersolution cap is enforced") {
  SpecOperator op(OperatorSpec::sigma_sum(2));
  CHECK_THROWS_AS(
      solve_dirichlet(op, ConvexDomain::disk(1.0),
                      [](double, double) { return 1e12; },
                      [](double, double) { return 0.0; }, 1.0 / 8),
      NumericalError);
}
