#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "twistpde/certify.hpp"
#include "twistpde/errors.hpp"
#include "twistpde/matrix_calculus.hpp"
#include "twistpde/operator_spec.hpp"
#include "twistpde/scalar_transform.hpp"
#include "twistpde/tensor3.hpp"

using namespace twistpde;
using namespace testing_oracles;

TEST_CASE("scalar transform construction and validation") {
  ScalarTransform g = ScalarTransform::power_root(2);
  CHECK(g.value(4.0) == doctest::Approx(2.0));
  CHECK(g.d1(4.0) == doctest::Approx(0.25));
  CHECK(g.d2(4.0) < 0.0);
  CHECK(g.value(0.0) == 0.0);
  CHECK_THROWS_AS(g.value(-1.0), PreconditionError);
  CHECK_THROWS_AS(g.d1(1e-20), PreconditionError);

  ScalarTransform aff = ScalarTransform::affine(2.0, 1.0);
  CHECK(aff.value(3.0) == doctest::Approx(7.0));
  CHECK(aff.d2(3.0) == 0.0);
  CHECK_THROWS_AS(ScalarTransform::affine(-1.0, 0.0), PreconditionError);

  ScalarTransform chain = ScalarTransform::chain(
      {ScalarTransform::power_root(2, 1e-10, 100.0),
       ScalarTransform::affine(3.0, 0.5)},
      0.01, 50.0);
  CHECK(chain.value(4.0) == doctest::Approx(3.0 * 2.0 + 0.5));
  CHECK(chain.d1(4.0) == doctest::Approx(3.0 * 0.25));
  CHECK(chain.d2(4.0) == doctest::Approx(3.0 * (-1.0 / 32.0)));
}

TEST_CASE("tensor3 symmetry is structural") {
  Tensor3 t(3);
  t.set(0, 1, 2, 5.0);
  CHECK(t.get(2, 1, 0) == 5.0);
  CHECK(t.get(1, 2, 0) == 5.0);
  CHECK(t.get(0, 2, 1) == 5.0);
  CHECK(Tensor3::canonical_size(2) == 4);
  CHECK(Tensor3::canonical_size(3) == 10);
  // Slices are the symmetric matrices T[a][.][.].
  SymMatrix s = t.slice(0);
  CHECK(s(1, 2) == 5.0);
  CHECK(s(2, 1) == 5.0);
}

TEST_CASE("check_sandwich hand cases") {
  ScalarTransform g = ScalarTransform::power_root(2);
  SandwichResult r = check_sandwich({1.0, 1.0}, g);
  CHECK(r.lhs == doctest::Approx(2.0));
  CHECK(r.mid == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.rhs == doctest::Approx(0.5));
  CHECK(r.ok);

  SandwichResult single = check_sandwich({3.7}, g);
  CHECK(single.ok);
  CHECK(single.lhs == doctest::Approx(single.mid));

  CHECK_THROWS_AS(check_sandwich({1.0, -0.5}, g), PreconditionError);
}

TEST_CASE("sandwich sweep has zero violations for power roots") {
  for (int p : {2, 5, 8}) {
    Certificate cert = sandwich_sweep(10000, 5, ScalarTransform::power_root(p),
                                      10.0, 42 + p);
    CHECK(cert.pass);
    CHECK(cert.violations.empty());
    CHECK(cert.samples_run == 10000);
    CHECK(cert.constant_c > 0.0);
    CHECK(cert.constant_c <= 1.0 + 1e-12);
  }
}

TEST_CASE("certificates are reproducible bitwise") {
  OperatorSpec spec = OperatorSpec::det_plus_laplacian(2);
  Certificate a = check_transform_concavity(spec, 0, 500, 7);
  Certificate b = check_transform_concavity(spec, 0, 500, 7);
  CHECK(a.samples_run == b.samples_run);
  CHECK(a.samples_skipped == b.samples_skipped);
  CHECK(a.max_violation == b.max_violation);  // bitwise
  CHECK(a.violations.size() == b.violations.size());
  Certificate c = lemma31_sweep(spec, 200, 7);
  Certificate d = lemma31_sweep(spec, 200, 7);
  CHECK(c.max_violation == d.max_violation);
}

TEST_CASE("transform concavity: degenerate and linear cases") {
  OperatorSpec spec(2, std::nullopt, {{2, 1.0, SymMatrix::identity(2)}},
                    ScalarTransform::power_root(2));
  // Equal endpoints give exact equality: no violation possible.
  SymMatrix I = SymMatrix::identity(2);
  double y = spec.term_value(0, I);
  const ScalarTransform& g = spec.transform();
  CHECK(g.value(y) - (0.5 * g.value(y) + 0.5 * g.value(y)) == 0.0);

  // Affine G over the linear trace term: equality always.
  OperatorSpec lin(2, SymMatrix::identity(2), {},
                   ScalarTransform::affine(1.0, 0.0));
  Sampler smp(31);
  for (int rep = 0; rep < 100; ++rep) {
    SymMatrix M1 = smp.spd(2), M2 = smp.spd(2);
    double lhs = lin.transform().value(lin.convex_value((M1 + M2) * 0.5));
    double rhs = 0.5 * lin.transform().value(lin.convex_value(M1)) +
                 0.5 * lin.transform().value(lin.convex_value(M2));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("transform concavity certificates pass for sigma_k with x^(1/k)") {
  for (int n = 2; n <= 3; ++n)
    for (int k = 2; k <= n; ++k) {
      OperatorSpec spec(n, std::nullopt, {{k, 1.0, SymMatrix::identity(n)}},
                        ScalarTransform::power_root(k));
      Certificate cert = check_transform_concavity(spec, 0, 10000, 100 + k);
      CHECK(cert.pass);
      CHECK(cert.violations.empty());
    }
}

TEST_CASE("concavity certificate fails for a linear G over det") {
  // det is not midpoint concave (I and 3I violate), so an affine G must
  // produce violations: the negative control for the certifier.
  OperatorSpec spec(2, std::nullopt, {{2, 1.0, SymMatrix::identity(2)}},
                    ScalarTransform::affine(1.0, 0.0));
  Certificate cert = check_transform_concavity(spec, 0, 2000, 5);
  CHECK_FALSE(cert.pass);
  CHECK(cert.max_violation > 0.0);
}

TEST_CASE("domain misses are skipped and counted") {
  OperatorSpec spec(2, std::nullopt, {{2, 1.0, SymMatrix::identity(2)}},
                    ScalarTransform::power_root(2, 1e6, 1e8));
  Certificate cert = check_transform_concavity(spec, 0, 100, 3);
  CHECK(cert.samples_skipped == 100);
  CHECK(cert.pass);  // nothing checked, nothing violated
}

TEST_CASE("build_chain accepts valid links and keeps prefixes") {
  // sqrt on [1e-10, 1/16] has G' >= 2 and G >= 0.
  TransformChain chain = build_chain(
      {ScalarTransform::power_root(2, 1e-10, 1.0),
       ScalarTransform::affine(1.5, 0.0)},
      1e-10, 1.0 / 16.0);
  CHECK(chain.prefixes.size() == 2);
  CHECK(chain.composed().value(0.04) == doctest::Approx(1.5 * 0.2));

  TransformChain single =
      build_chain({ScalarTransform::power_root(3, 1e-10, 1.0)}, 1e-6, 0.01);
  CHECK(single.composed().value(0.008) ==
        doctest::Approx(single.links[0].value(0.008)));
}

TEST_CASE("build_chain rejects links violating the premises") {
  // Affine slope 0.5 < 1 fails G' >= 1; the witness must be reported.
  try {
    build_chain({ScalarTransform::affine(0.5, 0.0)}, 0.0, 1.0);
    FAIL("expected ChainPremiseError");
  } catch (const ChainPremiseError& e) {
    CHECK(e.link_index == 0);
    CHECK(e.witness_value == doctest::Approx(0.5));
  }
  // sqrt over a set reaching past 1/4 dips below slope 1.
  CHECK_THROWS_AS(
      build_chain({ScalarTransform::power_root(2, 1e-10, 2.0)}, 1e-10, 1.0),
      ChainPremiseError);
}

TEST_CASE("chain concavity certificate over sigma terms") {
  OperatorSpec spec(2, std::nullopt, {{2, 0.01, SymMatrix::identity(2) * 0.1}},
                    ScalarTransform::power_root(2));
  // Term values stay small, inside the chain's compact set.
  TransformChain chain = build_chain(
      {ScalarTransform::power_root(2, 1e-10, 1.0),
       ScalarTransform::affine(2.0, 0.0)},
      1e-10, 1.0 / 16.0);
  Certificate cert = chain_concavity_certificate(spec, chain, 2000, 17);
  CHECK(cert.samples_run == 2000);
  CHECK(cert.pass);
}

TEST_CASE("lemma31_form vanishes on the zero tensor") {
  OperatorSpec spec = OperatorSpec::det_plus_laplacian(2);
  Sampler smp(41);
  SymMatrix M = smp.spd(2);
  Tensor3 T(2);
  CHECK(lemma31_form(spec, M, T) == 0.0);
}

TEST_CASE("lemma31_form is nonpositive for the presets") {
  Sampler seeds(42);
  for (int n : {2, 3}) {
    Certificate a =
        lemma31_sweep(OperatorSpec::det_plus_laplacian(n), 2000, 42 + n);
    CHECK(a.pass);
    Certificate b =
        lemma31_sweep(OperatorSpec::mixed_random(n, 1000 + n), 2000, 52 + n);
    CHECK(b.pass);
    // Concave-only operator (no convex part).
    Certificate c = lemma31_sweep(OperatorSpec::sigma_sum(n), 2000, 62 + n);
    CHECK(c.pass);
  }
}

TEST_CASE("lemma31_form with affine G reduces to the concavity pairing") {
  // With G'' = 0 and a single term the formula collapses to
  // slope * sum_pq A_pq D^2F(T_p, T_q): the plain pairing of the convex
  // part with the term's second derivative.
  const double slope = 1.75;
  OperatorSpec spec(2, SymMatrix::identity(2) * 1.3,
                    {{2, 1.0, SymMatrix::identity(2)}},
                    ScalarTransform::affine(slope, 0.0));
  Sampler smp(77);
  for (int rep = 0; rep < 200; ++rep) {
    SymMatrix M = smp.spd(2);
    Tensor3 T = Tensor3::random_gaussian(2, smp);
    double got = lemma31_form(spec, M, T);
    double want = 0.0;
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        want += spec.convex_A()(p, q) *
                term_hessian_bilinear(spec, 0, M, T.slice(p), T.slice(q));
    want *= slope;
    CHECK(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
  }
  // The sign statement belongs to the transformed (concave) setting:
  // a single root-transformed term with no convex part stays <= 0.
  OperatorSpec concave(2, std::nullopt, {{2, 1.0, SymMatrix::identity(2)}},
                       ScalarTransform::power_root(2));
  Certificate cert = lemma31_sweep(concave, 2000, 78);
  CHECK(cert.pass);
}

TEST_CASE("lemma31_form domain violations throw") {
  OperatorSpec spec(2, std::nullopt, {{2, 1.0, SymMatrix::identity(2)}},
                    ScalarTransform::power_root(2, 10.0, 1e6));
  Sampler smp(43);
  Tensor3 T = Tensor3::random_gaussian(2, smp);
  CHECK_THROWS_AS(lemma31_form(spec, SymMatrix::identity(2) * 0.1, T),
                  PreconditionError);
}

TEST_CASE("estimate_constants on constant and varying fields") {
  OperatorSpec spec = OperatorSpec::det_plus_laplacian(2);
  std::vector<SymMatrix> constant(50, SymMatrix::identity(2) * 1.7);
  ConstantsReport rep = estimate_constants(spec, constant);
  CHECK(rep.W_lo == doctest::Approx(rep.W_hi));
  REQUIRE(rep.gamma.has_value());
  double y = spec.term_value(0, constant[0]);
  CHECK(*rep.gamma == doctest::Approx(spec.transform().d1(y)).epsilon(1e-12));
  // -F_convex < 0 falls outside the power-root domain: Gamma undefined.
  CHECK_FALSE(rep.Gamma.has_value());

  // With an affine transform Gamma is defined, and 0 for constant fields.
  OperatorSpec affine_spec(2, SymMatrix::identity(2),
                           {{2, 1.0, SymMatrix::identity(2)}},
                           ScalarTransform::affine(1.0, 0.0, -1e9, 1e9));
  ConstantsReport rep2 = estimate_constants(affine_spec, constant);
  REQUIRE(rep2.Gamma.has_value());
  CHECK(*rep2.Gamma == 0.0);

  // Hull escaping the domain flags gamma undefined.
  OperatorSpec narrow(2, std::nullopt, {{2, 1.0, SymMatrix::identity(2)}},
                      ScalarTransform::power_root(2, 1.0, 2.0));
  std::vector<SymMatrix> wide = {SymMatrix::identity(2) * 1.2,
                                 SymMatrix::identity(2) * 5.0};
  ConstantsReport rep3 = estimate_constants(narrow, wide);
  CHECK_FALSE(rep3.gamma.has_value());
}
