#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "twistpde/errors.hpp"
#include "twistpde/matrix_calculus.hpp"
#include "twistpde/operator_spec.hpp"
#include "twistpde/rng.hpp"
#include "twistpde/spectrum.hpp"
#include "twistpde/symmetric_functions.hpp"

using namespace twistpde;
using namespace testing_oracles;

TEST_CASE("elem_sym basics") {
  std::vector<double> ones3 = {1, 1, 1};
  CHECK(elem_sym(2, ones3) == doctest::Approx(3.0).epsilon(1e-14));
  std::vector<double> lam = {1, 2, 3};
  CHECK(elem_sym(2, lam) == doctest::Approx(11.0).epsilon(1e-14));
  CHECK(elem_sym(0, lam) == 1.0);
  CHECK(elem_sym(3, lam) == doctest::Approx(6.0).epsilon(1e-14));

  // S_k(1,...,1) = C(n, k), exact integer binomials as the oracle.
  for (int n = 2; n <= 8; ++n) {
    std::vector<double> ones(n, 1.0);
    for (int k = 0; k <= n; ++k)
      CHECK(elem_sym(k, ones) ==
            doctest::Approx(double(binomial_exact(n, k))).epsilon(1e-13));
  }

  CHECK_THROWS_AS(elem_sym(-1, lam), PreconditionError);
  CHECK_THROWS_AS(elem_sym(4, lam), PreconditionError);
}

TEST_CASE("elem_sym matches brute-force subset enumeration") {
  Sampler smp(11);
  for (int n = 2; n <= 8; ++n)
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> lam = smp.uniform_vec(n, -2.0, 2.0);
      for (int k = 0; k <= n; ++k) {
        double want = elem_sym_bruteforce(k, lam);
        CHECK(elem_sym(k, lam) ==
              doctest::Approx(want).epsilon(1e-11).scale(1.0 + std::abs(want)));
      }
    }
}

TEST_CASE("elem_sym Newton-Girard identity") {
  // k S_k = sum_{i=1}^k (-1)^{i-1} S_{k-i} p_i with power sums p_i.
  Sampler smp(12);
  for (int n = 2; n <= 8; ++n)
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<double> lam = smp.uniform_vec(n, -1.5, 1.5);
      std::vector<double> p(n + 1, 0.0);
      for (int i = 1; i <= n; ++i)
        for (double l : lam) p[i] += std::pow(l, i);
      for (int k = 1; k <= n; ++k) {
        double rhs = 0.0;
        for (int i = 1; i <= k; ++i)
          rhs += (i % 2 == 1 ? 1.0 : -1.0) * elem_sym(k - i, lam) * p[i];
        double lhs = k * elem_sym(k, lam);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
      }
    }
}

TEST_CASE("eigen_sym identity and diagonal") {
  Spectrum s = eigen_sym(SymMatrix::identity(4));
  for (double l : s.eigenvalues) CHECK(l == doctest::Approx(1.0));
  Spectrum d = eigen_sym(SymMatrix::diag({3.0, 1.0}));
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(3.0));
}

TEST_CASE("eigen_sym reconstructs planted spectra") {
  Sampler smp(13);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> q = random_orthogonal(3, smp);
    SymMatrix m = conjugated_diag(q, {1.0, 2.0, 4.0});
    Spectrum s = eigen_sym(m);
    CHECK(std::abs(s.eigenvalues[0] - 1.0) <= 1e-9);
    CHECK(std::abs(s.eigenvalues[1] - 2.0) <= 1e-9);
    CHECK(std::abs(s.eigenvalues[2] - 4.0) <= 1e-9);
    CHECK(s.orthogonality_defect() <= 1e-10);
    CHECK(s.reconstruction_defect(m) <= 1e-9 * (1.0 + m.inf_norm()));
  }
}

TEST_CASE("eigen_sym invariants on random matrices") {
  Sampler smp(14);
  for (int n = 2; n <= 8; ++n)
    for (int rep = 0; rep < 25; ++rep) {
      SymMatrix m = smp.sym_gaussian(n);
      Spectrum s = eigen_sym(m);
      for (int i = 1; i < n; ++i)
        CHECK(s.eigenvalues[i - 1] <= s.eigenvalues[i]);
      CHECK(s.orthogonality_defect() <= 1e-10);
      CHECK(s.reconstruction_defect(m) <= 1e-9 * (1.0 + m.inf_norm()));
    }
}

TEST_CASE("eigen_sym reports non-convergence with the residual") {
  Sampler smp(15);
  SymMatrix m = smp.sym_gaussian(5);
  try {
    eigen_sym(m, 0);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.achieved_residual > 0.0);
  }
}

TEST_CASE("sigma_kB leading coefficient is det") {
  Sampler smp(16);
  for (int n = 2; n <= 5; ++n)
    for (int rep = 0; rep < 20; ++rep) {
      SymMatrix m = smp.sym_gaussian(n);
      double want = m.det();
      CHECK(sigma_kB(n, SymMatrix::identity(n), m) ==
            doctest::Approx(want).epsilon(1e-9).scale(1.0 + std::abs(want)));
    }
}

TEST_CASE("sigma_kB hand example") {
  // det(diag(2,1) + t I) = t^2 + 3t + 2.
  SymMatrix B = SymMatrix::diag({2.0, 1.0});
  SymMatrix M = SymMatrix::identity(2);
  CHECK(sigma_kB(1, B, M) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(sigma_kB(2, B, M) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(sigma_kB(0, B, M), PreconditionError);
  CHECK_THROWS_AS(sigma_kB(3, B, M), PreconditionError);
}

TEST_CASE("sigma_kB with B = I matches elem_sym of the spectrum") {
  Sampler smp(17);
  for (int rep = 0; rep < 1000; ++rep) {
    int n = 2 + rep % 5;
    SymMatrix m = smp.sym_gaussian(n);
    Spectrum s = eigen_sym(m);
    for (int k = 1; k <= n; ++k) {
      double want = elem_sym(k, s.eigenvalues);
      double got = sigma_kB(k, SymMatrix::identity(n), m);
      CHECK(std::abs(got - want) <=
            1e-8 * (1.0 + std::pow(m.inf_norm(), k)));
    }
  }
}

TEST_CASE("char_coeffs reconstructs det(B + M)") {
  Sampler smp(18);
  for (int rep = 0; rep < 1000; ++rep) {
    int n = 2 + rep % 7;
    SymMatrix B = smp.spd(n, 0.5);
    SymMatrix M = smp.sym_gaussian(n);
    auto c = char_coeffs(B, M);
    CHECK(c[0] == doctest::Approx(B.det()).epsilon(1e-9));
    double sum = 0.0;
    for (double ck : c) sum += ck;  // evaluate at t = 1
    double want = (B + M).det();
    CHECK(std::abs(sum - want) <= 1e-8 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("op_value on the det-plus-laplacian preset") {
  OperatorSpec spec = OperatorSpec::det_plus_laplacian(2);
  CHECK(spec.value(SymMatrix(2)) == doctest::Approx(0.0));
  CHECK(spec.value(SymMatrix::identity(2)) == doctest::Approx(3.0));

  // Convex part only: value is tr(A M).
  SymMatrix A = SymMatrix::diag({2.0, 0.5});
  OperatorSpec conv_only(2, A, {}, ScalarTransform::power_root(2));
  Sampler smp(19);
  SymMatrix M = smp.sym_gaussian(2);
  CHECK(conv_only.value(M) == doctest::Approx(A.dot(M)).epsilon(1e-13));
}

TEST_CASE("op_gradient: trace part is exact, det matches the adjugate") {
  SymMatrix A = SymMatrix::diag({2.0, 0.5});
  OperatorSpec conv_only(2, A, {}, ScalarTransform::power_root(2));
  Sampler smp(20);
  SymMatrix M = smp.sym_gaussian(2);
  SymMatrix g = op_gradient(conv_only, M);
  CHECK(g(0, 0) == 2.0);  // exactly A
  CHECK(g(1, 1) == 0.5);
  CHECK(g(0, 1) == 0.0);

  // Pure determinant term: diag(2,3) -> adj = diag(3,2).
  OperatorSpec det_only(2, std::nullopt,
                        {{2, 1.0, SymMatrix::identity(2)}},
                        ScalarTransform::power_root(2));
  SymMatrix g2 = op_gradient(det_only, SymMatrix::diag({2.0, 3.0}));
  CHECK(g2(0, 0) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(g2(1, 1) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::abs(g2(0, 1)) <= 1e-8);

  // det + trace at the identity: adj(I) + I = 2I.
  OperatorSpec detlap = OperatorSpec::det_plus_laplacian(2);
  SymMatrix g3 = op_gradient(detlap, SymMatrix::identity(2));
  CHECK(g3(0, 0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(g3(1, 1) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(std::abs(g3(0, 1)) <= 1e-8);
}

TEST_CASE("op_gradient agrees with the adjugate on 1000 SPD samples") {
  Sampler smp(21);
  for (int rep = 0; rep < 1000; ++rep) {
    int n = 2 + rep % 3;
    OperatorSpec det_only(n, std::nullopt,
                          {{n, 1.0, SymMatrix::identity(n)}},
                          ScalarTransform::power_root(n));
    SymMatrix M = smp.spd(n, 1e-3);
    SymMatrix g = op_gradient(det_only, M);
    SymMatrix want = adjugate(M);
    double scale = want.inf_norm() + 1.0;
    for (int idx = 0; idx < g.packed_size(); ++idx)
      CHECK(std::abs(g.packed(idx) - want.packed(idx)) <= 1e-5 * scale);
  }
}

TEST_CASE("op_hessian_form basics") {
  SymMatrix A = SymMatrix::diag({2.0, 0.5});
  OperatorSpec conv_only(2, A, {}, ScalarTransform::power_root(2));
  Sampler smp(22);
  SymMatrix M = smp.sym_gaussian(2);
  SymMatrix P = smp.sym_gaussian(2);
  CHECK(std::abs(op_hessian_form(conv_only, M, P)) <= 1e-6);

  OperatorSpec det_only(2, std::nullopt, {{2, 1.0, SymMatrix::identity(2)}},
                        ScalarTransform::power_root(2));
  SymMatrix I = SymMatrix::identity(2);
  // det(I + sI) = (1+s)^2 and det(I + s diag(1,-1)) = 1 - s^2.
  CHECK(op_hessian_form(det_only, I, I) == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(op_hessian_form(det_only, I, SymMatrix::diag({1.0, -1.0})) ==
        doctest::Approx(-2.0).epsilon(1e-5));
}

TEST_CASE("cone_check on the sigma-sum preset") {
  OperatorSpec spec = OperatorSpec::sigma_sum(2);
  ConeReport in = cone_check(spec, SymMatrix::identity(2), 0.0);
  CHECK(in.inside);

  ConeReport out = cone_check(spec, SymMatrix::diag({-2.0, 0.0}), 0.0);
  CHECK_FALSE(out.inside);
  CHECK(out.margin_attained <= -1.0 + 1e-12);

  // M = 0 sits exactly on the cone boundary: both slack quantities are
  // attained with margin 0 (the gradient of S_2 vanishes at 0).
  ConeReport edge = cone_check(spec, SymMatrix(2), 0.0);
  CHECK(edge.inside);
  CHECK(std::abs(edge.margin_attained) <= 1e-8);
  CHECK_FALSE(cone_check(spec, SymMatrix(2), 1e-3).inside);

  CHECK_THROWS_AS(cone_check(spec, SymMatrix::identity(2), -1.0),
                  PreconditionError);
}

TEST_CASE("cone_check is invariant under orthogonal conjugation") {
  // Isotropic preset: A = a I, B_k = b_k I.
  OperatorSpec spec(3, SymMatrix::identity(3) * 2.0,
                    {{2, 0.7, SymMatrix::identity(3)},
                     {3, 0.3, SymMatrix::identity(3)}},
                    ScalarTransform::power_root(3));
  Sampler smp(23);
  for (int rep = 0; rep < 50; ++rep) {
    SymMatrix M = smp.sym_gaussian(3);
    std::vector<double> q = random_orthogonal(3, smp);
    SymMatrix Mc = conjugate(M, q);
    for (double margin : {0.0, 0.1, 0.5}) {
      ConeReport a = cone_check(spec, M, margin);
      ConeReport b = cone_check(spec, Mc, margin);
      CHECK(a.inside == b.inside);
      CHECK(std::abs(a.margin_attained - b.margin_attained) <=
            1e-7 * (1.0 + std::abs(a.margin_attained)));
    }
  }
}

TEST_CASE("SymMatrix validation") {
  CHECK_THROWS_AS(SymMatrix(9), PreconditionError);
  CHECK_THROWS_AS(SymMatrix::from_rows(2, {1.0, 2.0, 3.0, 4.0}),
                  PreconditionError);
  SymMatrix m = SymMatrix::from_rows(2, {1.0, 2.0, 2.0, 4.0});
  CHECK(m(0, 1) == m(1, 0));
}
