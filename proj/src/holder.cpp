#include "twistpde/holder.hpp"

#include <cmath>

#include "twistpde/errors.hpp"
#include "twistpde/rng.hpp"

namespace twistpde {

namespace {

double pair_quotient(const MatrixField& f, int i, int j, double alpha) {
  double diff = 0.0;
  const SymMatrix& A = f.H[i];
  const SymMatrix& B = f.H[j];
  for (int k = 0; k < A.packed_size(); ++k)
    diff = std::max(diff, std::abs(A.packed(k) - B.packed(k)));
  double dx = f.points[i][0] - f.points[j][0];
  double dy = f.points[i][1] - f.points[j][1];
  double dist = std::sqrt(dx * dx + dy * dy);
  if (dist == 0.0) return 0.0;  // coincident points carry no information
  return diff / std::pow(dist, alpha);
}

}  // namespace

HolderReport holder_seminorm(const MatrixField& field, double alpha,
                             const PairSampling& sampling) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw PreconditionError("holder_seminorm: alpha must lie in (0, 1)");
  const long n = field.size();
  if (n == 0) throw PreconditionError("holder_seminorm: empty region");

  HolderReport rep;
  rep.alpha = alpha;
  rep.seed = sampling.seed;

  const long total_pairs = n * (n - 1) / 2;
  bool exhaustive = sampling.mode == PairMode::Exhaustive ||
                    (sampling.mode == PairMode::Auto &&
                     total_pairs <= 1000000L);
  rep.exhaustive = exhaustive;

  if (exhaustive) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double q = pair_quotient(field, i, j, alpha);
        if (q > rep.seminorm) {
          rep.seminorm = q;
          rep.arg_i = i;
          rep.arg_j = j;
        }
      }
    rep.pairs_evaluated = total_pairs;
  } else {
    Sampler smp(sampling.seed);
    for (long s = 0; s < sampling.count; ++s) {
      int i = smp.uniform_int(0, static_cast<int>(n) - 1);
      int j = smp.uniform_int(0, static_cast<int>(n) - 2);
      if (j >= i) ++j;
      if (i > j) std::swap(i, j);
      double q = pair_quotient(field, i, j, alpha);
      if (q > rep.seminorm ||
          (q == rep.seminorm && rep.arg_i >= 0 &&
           (i < rep.arg_i || (i == rep.arg_i && j < rep.arg_j)))) {
        rep.seminorm = q;
        rep.arg_i = i;
        rep.arg_j = j;
      }
    }
    rep.pairs_evaluated = sampling.count;
  }
  return rep;
}

MatrixField restrict_to_scaled_domain(const HessianField& field,
                                      double ratio) {
  if (!(ratio > 0.0))
    throw PreconditionError("restrict_to_scaled_domain: ratio must be > 0");
  MatrixField out;
  const Grid& g = *field.grid;
  for (int p = 0; p < g.num_nodes(); ++p) {
    const Grid::Node& nd = g.node(p);
    if (g.domain().rho(nd.x / ratio, nd.y / ratio) < 0.0) {
      out.points.push_back({nd.x, nd.y});
      out.H.push_back(field.H[p]);
    }
  }
  return out;
}

HolderReport holder_on_grid(const HessianField& field, double alpha,
                            double ratio, const PairSampling& sampling) {
  MatrixField restricted = restrict_to_scaled_domain(field, ratio);
  if (restricted.size() == 0)
    throw PreconditionError("holder_on_grid: scaled region contains no nodes");
  HolderReport rep = holder_seminorm(restricted, alpha, sampling);
  rep.region_ratio = ratio;
  rep.h = field.grid->spacing();
  return rep;
}

std::vector<RefinementRow> refinement_study(
    const OperatorSpec& spec, const ConvexDomain& domain, const ScalarFn& f,
    const ScalarFn& phi, const std::vector<double>& alphas,
    const std::vector<double>& hs, const SolveOptions& opts,
    double region_ratio, std::uint64_t seed) {
  if (hs.size() < 3)
    throw PreconditionError("refinement_study: need at least 3 grid spacings");
  for (size_t i = 1; i < hs.size(); ++i)
    if (!(hs[i] < hs[i - 1]))
      throw PreconditionError("refinement_study: h list must be descending");

  std::vector<RefinementRow> rows;
  SpecOperator op(spec);
  for (double h : hs) {
    std::optional<HessianField> hess;
    std::optional<ConstantsReport> constants;
    std::string note;
    try {
      SolveResult sol = solve_dirichlet(op, domain, f, phi, h, opts);
      if (!sol.report.converged) {
        note = "solver did not converge: " + sol.report.failure;
      } else {
        hess = discrete_hessian_field(sol.u);
        constants = estimate_constants(spec, hess->H);
      }
    } catch (const std::exception& e) {
      note = e.what();
    }
    for (double alpha : alphas) {
      RefinementRow row;
      row.h = h;
      row.alpha = alpha;
      row.note = note;
      if (hess) {
        PairSampling sampling;
        sampling.seed = seed;
        HolderReport rep = holder_on_grid(*hess, alpha, region_ratio, sampling);
        row.seminorm = rep.seminorm;
        row.solved = true;
        row.gamma = constants->gamma;
        row.Gamma = constants->Gamma;
        row.hess_inf = constants->hessian_inf;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace twistpde
