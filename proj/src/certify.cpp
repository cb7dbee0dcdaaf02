#include "twistpde/certify.hpp"

#include <algorithm>
#include <cmath>

#include "twistpde/errors.hpp"
#include "twistpde/matrix_calculus.hpp"
#include "twistpde/rng.hpp"

namespace twistpde {

namespace {

constexpr double kConcavityTol = 1e-10;
constexpr double kSandwichTol = 1e-12;

void record(Certificate& cert, long sample, double deficit, double tol) {
  if (deficit > tol) {
    cert.violations.push_back({sample, deficit, tol});
    cert.max_violation = std::max(cert.max_violation, deficit);
    cert.pass = false;
  }
}

// Midpoint (and occasionally segment) concavity of G(term(.)) for one
// scalar transform; shared by the transform and chain certificates.
Certificate concavity_sweep(const OperatorSpec& spec, int term_index,
                            const ScalarTransform& G, long samples,
                            std::uint64_t seed, const std::string& label) {
  if (term_index < 0 || term_index >= spec.term_count())
    throw PreconditionError("concavity check: term index out of range");
  Certificate cert;
  cert.check = label;
  cert.seed = seed;
  Sampler smp(seed);
  const int n = spec.dim();
  const double lo = G.domain_lo();
  for (long s = 0; s < samples; ++s) {
    SymMatrix M1 = smp.spd(n, cert.epsilon_spd);
    SymMatrix M2 = smp.spd(n, cert.epsilon_spd);
    double y1 = spec.term_value(term_index, M1);
    double y2 = spec.term_value(term_index, M2);
    SymMatrix mid = (M1 + M2) * 0.5;
    double ym = spec.term_value(term_index, mid);
    if (y1 < lo || y2 < lo || ym < lo) {
      ++cert.samples_skipped;
      ++cert.samples_run;
      continue;
    }
    double deficit = 0.5 * G.value(y1) + 0.5 * G.value(y2) - G.value(ym);
    record(cert, s, deficit, kConcavityTol);
    if (s % 10 == 0) {
      double t = smp.uniform(0.0, 1.0);
      SymMatrix Mt = M1 * t + M2 * (1.0 - t);
      double yt = spec.term_value(term_index, Mt);
      if (yt >= lo) {
        double d2 = t * G.value(y1) + (1.0 - t) * G.value(y2) - G.value(yt);
        record(cert, s, d2, kConcavityTol);
      } else {
        ++cert.samples_skipped;
      }
    }
    ++cert.samples_run;
  }
  return cert;
}

}  // namespace

Certificate check_transform_concavity(const OperatorSpec& spec, int term_index,
                                      long samples, std::uint64_t seed) {
  return concavity_sweep(spec, term_index, spec.transform(), samples, seed,
                         "transform-concavity");
}

SandwichResult check_sandwich(const std::vector<double>& values,
                              const ScalarTransform& G) {
  for (double y : values)
    if (y < 0.0)
      throw PreconditionError(
          "check_sandwich: negative input (the bound needs values in R_{>=0})");
  SandwichResult r;
  double sum = 0.0;
  for (double y : values) {
    r.lhs += G.value(y);
    sum += y;
  }
  r.mid = G.value(sum);
  r.rhs = std::ldexp(r.lhs, -static_cast<int>(values.size()));
  r.ok = (r.lhs + kSandwichTol >= r.mid) && (r.mid >= r.rhs - kSandwichTol);
  return r;
}

Certificate sandwich_sweep(long samples, int m_max, const ScalarTransform& G,
                           double y_hi, std::uint64_t seed) {
  if (m_max < 1) throw PreconditionError("sandwich_sweep: m_max must be >= 1");
  Certificate cert;
  cert.check = "sandwich";
  cert.seed = seed;
  Sampler smp(seed);
  for (long s = 0; s < samples; ++s) {
    int m = smp.uniform_int(1, m_max);
    std::vector<double> y = smp.uniform_vec(m, 0.0, y_hi);
    SandwichResult r = check_sandwich(y, G);
    double deficit = std::max(r.mid - r.lhs, r.rhs - r.mid);
    record(cert, s, deficit, kSandwichTol);
    if (r.lhs > 0.0) cert.constant_c = std::min(cert.constant_c, r.mid / r.lhs);
    ++cert.samples_run;
  }
  return cert;
}

Certificate chain_concavity_certificate(const OperatorSpec& spec,
                                        const TransformChain& chain,
                                        long samples, std::uint64_t seed) {
  Certificate total;
  total.check = "chain-concavity";
  total.seed = seed;
  for (int a = 0; a < spec.term_count(); ++a) {
    Certificate c = concavity_sweep(spec, a, chain.composed(), samples,
                                    seed + static_cast<std::uint64_t>(a),
                                    "chain-concavity");
    total.samples_run += c.samples_run;
    total.samples_skipped += c.samples_skipped;
    for (const Violation& v : c.violations) total.violations.push_back(v);
    total.max_violation = std::max(total.max_violation, c.max_violation);
    total.pass = total.pass && c.pass;
  }
  return total;
}

double lemma31_form(const OperatorSpec& spec, const SymMatrix& M,
                    const Tensor3& T) {
  const int n = spec.dim();
  if (M.dim() != n || T.dim() != n)
    throw PreconditionError("lemma31_form: dimension mismatch");
  if (spec.term_count() < 1)
    throw PreconditionError("lemma31_form: operator has no concave terms");
  const ScalarTransform& G = spec.transform();
  const int m = spec.term_count();

  std::vector<SymMatrix> slices;
  slices.reserve(n);
  for (int a = 0; a < n; ++a) slices.push_back(T.slice(a));

  std::vector<double> y(m);
  std::vector<SymMatrix> grad;
  grad.reserve(m);
  for (int a = 0; a < m; ++a) {
    y[a] = spec.term_value(a, M);
    if (y[a] < G.domain_lo())
      throw PreconditionError(
          "lemma31_form: term value " + std::to_string(y[a]) +
          " is below the transform domain (need M inside the positive cone)");
    grad.push_back(term_gradient(spec, a, M));
  }
  SymMatrix grad_sum(n);
  for (const SymMatrix& g : grad) grad_sum += g;

  // g[alpha][a] = <grad_alpha, T_a>
  std::vector<std::vector<double>> gdot(m, std::vector<double>(n));
  for (int a = 0; a < m; ++a)
    for (int d = 0; d < n; ++d) gdot[a][d] = grad[a].dot(slices[d]);

  const bool has_conv = spec.has_convex_part();
  double total = 0.0;
  for (int a = 0; a < m; ++a) {
    double g1 = G.d1(y[a]), g2 = G.d2(y[a]);

    // Hessian form of the term in slice directions, bilinear by
    // polarization of the five-point quadratic form.
    double hess[SymMatrix::kMaxDim][SymMatrix::kMaxDim];
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) {
        double v = term_hessian_bilinear(spec, a, M, slices[p], slices[q]);
        hess[p][q] = v;
        hess[q][p] = v;
      }

    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        double gg = gdot[a][p] * gdot[a][q];
        if (has_conv)
          total += spec.convex_A()(p, q) * (g2 * gg + g1 * hess[p][q]);
        total += grad_sum(p, q) * g2 * gg;
        // Third group: -G' F_alpha^{pq} x (Hessian form of the convex
        // part) -- identically zero since the trace part is linear.
      }
  }
  return total;
}

Certificate lemma31_sweep(const OperatorSpec& spec, long samples,
                          std::uint64_t seed, double tol) {
  Certificate cert;
  cert.check = "lemma31";
  cert.seed = seed;
  Sampler smp(seed);
  const int n = spec.dim();
  for (long s = 0; s < samples; ++s) {
    SymMatrix M = smp.spd(n, cert.epsilon_spd);
    Tensor3 T = Tensor3::random_gaussian(n, smp);
    double v = lemma31_form(spec, M, T);
    record(cert, s, v, tol);
    ++cert.samples_run;
  }
  return cert;
}

ConstantsReport estimate_constants(const OperatorSpec& spec,
                                   const std::vector<SymMatrix>& field) {
  if (field.empty())
    throw PreconditionError("estimate_constants: empty field");
  const ScalarTransform& G = spec.transform();
  ConstantsReport rep;
  bool first_w = true;
  bool conv_ok = true;
  bool first_g = true;
  double gmin = 0.0, gmax = 0.0;
  for (const SymMatrix& H : field) {
    rep.hessian_inf = std::max(rep.hessian_inf, H.inf_norm());
    double partial = 0.0;
    for (int a = 0; a < spec.term_count(); ++a) {
      double y = spec.term_value(a, H);
      partial += y;
      if (first_w) {
        rep.W_lo = rep.W_hi = y;
        first_w = false;
      }
      rep.W_lo = std::min({rep.W_lo, y, partial});
      rep.W_hi = std::max({rep.W_hi, y, partial});
    }
    if (conv_ok) {
      try {
        double gc = G.value(-spec.convex_value(H));
        if (first_g) {
          gmin = gmax = gc;
          first_g = false;
        }
        gmin = std::min(gmin, gc);
        gmax = std::max(gmax, gc);
      } catch (const PreconditionError&) {
        conv_ok = false;  // -F_convex left the domain of G
      }
    }
  }
  if (conv_ok && !first_g) rep.Gamma = gmax - gmin;
  if (spec.term_count() == 0) rep.W_lo = rep.W_hi = 0.0;

  // gamma = min G' over the hull, sampled on 10^4 points.
  if (rep.W_lo >= G.domain_lo() && rep.W_hi <= G.domain_hi()) {
    const int pts = 10000;
    double lo = rep.W_lo, hi = rep.W_hi;
    double best = G.d1(lo);
    for (int i = 1; i < pts; ++i) {
      double x = lo + (hi - lo) * i / (pts - 1);
      best = std::min(best, G.d1(x));
    }
    rep.gamma = best;
  }
  return rep;
}

}  // namespace twistpde
