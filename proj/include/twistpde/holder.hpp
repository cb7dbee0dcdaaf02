#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistpde/certify.hpp"
#include "twistpde/dirichlet.hpp"
#include "twistpde/grid.hpp"

namespace twistpde {

// Hessians attached to scattered points; what the seminorm actually
// needs from a grid field.
struct MatrixField {
  std::vector<std::array<double, 2>> points;
  std::vector<SymMatrix> H;
  int size() const { return static_cast<int>(points.size()); }
};

enum class PairMode { Auto, Exhaustive, Random };

struct PairSampling {
  PairMode mode = PairMode::Auto;  // Auto: exhaustive up to 10^6 pairs
  long count = 1000000;            // random-mode sample count
  std::uint64_t seed = 0;
};

struct HolderReport {
  double alpha = 0.0;
  double seminorm = 0.0;
  int arg_i = -1, arg_j = -1;  // pair attaining the reported value
  bool exhaustive = true;
  long pairs_evaluated = 0;
  std::uint64_t seed = 0;
  double region_ratio = 1.0;
  double h = 0.0;
};

// sup over point pairs of ||H(x) - H(y)||_inf / |x - y|^alpha. Ties are
// broken toward the lexicographically smallest index pair.
HolderReport holder_seminorm(const MatrixField& field, double alpha,
                             const PairSampling& sampling = {});

// Nodes inside the domain scaled by `ratio` about the origin (ratio 1/2
// mirrors the concentric half-ball).
MatrixField restrict_to_scaled_domain(const HessianField& field, double ratio);

// holder_seminorm on the restricted field, with grid metadata filled in.
HolderReport holder_on_grid(const HessianField& field, double alpha,
                            double ratio, const PairSampling& sampling = {});

struct RefinementRow {
  double h = 0.0;
  double alpha = 0.0;
  double seminorm = 0.0;
  std::optional<double> gamma;
  std::optional<double> Gamma;
  double hess_inf = 0.0;
  bool solved = false;
  std::string note;
};

// Solve per h, measure the seminorm per alpha on the scaled region, and
// tabulate. Rows are emitted even when a solve fails; the probe reports,
// it does not judge.
std::vector<RefinementRow> refinement_study(
    const OperatorSpec& spec, const ConvexDomain& domain, const ScalarFn& f,
    const ScalarFn& phi, const std::vector<double>& alphas,
    const std::vector<double>& hs, const SolveOptions& opts = {},
    double region_ratio = 0.5, std::uint64_t seed = 0);

}  // namespace twistpde
