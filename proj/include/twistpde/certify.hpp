#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistpde/operator_spec.hpp"
#include "twistpde/scalar_transform.hpp"
#include "twistpde/tensor3.hpp"

namespace twistpde {

struct Violation {
  long sample = 0;
  double value = 0.0;
  double tolerance = 0.0;
};

// Outcome of a sampled certification sweep. pass <=> violations empty.
// Reruns with the same seed are bitwise identical.
struct Certificate {
  std::string check;
  long samples_run = 0;
  long samples_skipped = 0;  // transform-domain misses
  std::vector<Violation> violations;
  double max_violation = 0.0;  // largest slack deficit seen (0 if none)
  bool pass = true;
  double constant_c = 1.0;  // empirical min G(sum y)/sum G(y)
  std::uint64_t seed = 0;
  double epsilon_spd = 1e-3;  // SPD sampling regularization R R^T + eps I
};

// Midpoint concavity of G(F_term(.)) over random SPD pairs; 10% of the
// samples also test a uniformly drawn segment parameter.
Certificate check_transform_concavity(const OperatorSpec& spec, int term_index,
                                      long samples, std::uint64_t seed);

struct SandwichResult {
  double lhs = 0.0;  // sum G(y_alpha)
  double mid = 0.0;  // G(sum y_alpha)
  double rhs = 0.0;  // 2^-m sum G(y_alpha)
  bool ok = false;
};

// sum G(y) >= G(sum y) >= 2^-m sum G(y), within 1e-12. Requires y >= 0
// and G(0+) -> 0 (power roots qualify).
SandwichResult check_sandwich(const std::vector<double>& values,
                              const ScalarTransform& G);

// Random nonnegative tuples, tuple length uniform in {1..m_max}.
Certificate sandwich_sweep(long samples, int m_max, const ScalarTransform& G,
                           double y_hi, std::uint64_t seed);

// Midpoint concavity of (composed chain) o F_term for every term.
Certificate chain_concavity_certificate(const OperatorSpec& spec,
                                        const TransformChain& chain,
                                        long samples, std::uint64_t seed);

// Pointwise subsolution form: the final display of the linearized
// computation for L(sum_alpha G(F_alpha(D^2 u))), evaluated on (M, T)
// with T standing in for the third derivatives. Nonpositive (up to
// finite-difference noise) whenever every G o F_alpha is concave and the
// convex part is linear elliptic.
double lemma31_form(const OperatorSpec& spec, const SymMatrix& M,
                    const Tensor3& T);

// Sweep of lemma31_form over random (SPD M, Gaussian T); violation when
// the value exceeds `tol` (default 1e-10).
Certificate lemma31_sweep(const OperatorSpec& spec, long samples,
                          std::uint64_t seed, double tol = 1e-10);

struct ConstantsReport {
  double W_lo = 0.0, W_hi = 0.0;  // hull of term values and partial sums
  std::optional<double> gamma;    // min G' over the hull; empty if the
                                  // hull escapes the transform domain
  std::optional<double> Gamma;    // osc of G(-F_convex); empty if -F_convex
                                  // leaves the domain of G
  double hessian_inf = 0.0;       // max ||M||_inf over the field
};

// Structural constants over a field of Hessians.
ConstantsReport estimate_constants(const OperatorSpec& spec,
                                   const std::vector<SymMatrix>& field);

}  // namespace twistpde
