#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "twistpde/domain.hpp"
#include "twistpde/radial.hpp"
#include "twistpde/sym_matrix.hpp"

namespace twistpde {

using ScalarFn = std::function<double(double, double)>;

// Cartesian grid with half-offset nodes (x_i = (i + 1/2) h) masked by a
// convex domain. Every interior node carries eight arms (E, W, N, S,
// NE, SW, NW, SE); an arm either reaches another interior node or is
// cut by the boundary at an exactly computed intersection point.
class Grid {
public:
  struct Node {
    int i, j;
    double x, y;
  };
  struct Arm {
    int neighbor = -1;  // interior node index; -1 means cut
    double theta = 1.0;  // cut distance / arm length, in (0, 1]
    double bx = 0.0, by = 0.0;  // boundary point of a cut arm
  };
  static constexpr int kDirs = 8;
  // Opposite directions are paired: lines are (0,1)=x, (2,3)=y,
  // (4,5)=diag+, (6,7)=diag-.
  static const std::array<std::array<int, 2>, kDirs>& directions();

  static std::shared_ptr<const Grid> build(const ConvexDomain& domain,
                                           double h);

  const ConvexDomain& domain() const { return domain_; }
  double spacing() const { return h_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int p) const { return nodes_[p]; }
  const Arm& arm(int p, int d) const { return arms_[p][d]; }
  double arm_length(int d) const { return d < 4 ? h_ : h_ * kSqrt2; }
  int find(int i, int j) const;  // -1 when (i, j) is not interior
  double min_cut_fraction() const { return min_theta_; }

private:
  static constexpr double kSqrt2 = 1.4142135623730951;
  Grid(const ConvexDomain& domain, double h) : domain_(domain), h_(h) {}
  ConvexDomain domain_;
  double h_;
  int mi_ = 0, mj_ = 0;  // lattice index ranges [-m, m)
  std::vector<int> lattice_;
  std::vector<Node> nodes_;
  std::vector<std::array<Arm, kDirs>> arms_;
  double min_theta_ = 1.0;
};

// Scalar field on the interior nodes, carrying its own boundary data at
// the cut points.
class GridField {
public:
  GridField() = default;
  explicit GridField(std::shared_ptr<const Grid> grid);
  // Interior and cut values sampled from one function.
  static GridField from_function(std::shared_ptr<const Grid> grid,
                                 const ScalarFn& fn);
  // Interior values from `interior`, boundary data from `boundary`.
  static GridField with_boundary(std::shared_ptr<const Grid> grid,
                                 const ScalarFn& interior,
                                 const ScalarFn& boundary);

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }

  double value(int p) const { return values_[p]; }
  double& value(int p) { return values_[p]; }
  double cut_value(int p, int d) const { return cut_[p * Grid::kDirs + d]; }
  void set_cut_value(int p, int d, double v) { cut_[p * Grid::kDirs + d] = v; }

  double sup_norm() const;
  bool all_finite() const;

private:
  std::shared_ptr<const Grid> grid_;
  std::vector<double> values_;
  std::vector<double> cut_;
};

// Field of 2x2 Hessians on the same node set.
struct HessianField {
  std::shared_ptr<const Grid> grid;
  std::vector<SymMatrix> H;
};

// Second-order discrete Hessian: three-point central differences along
// the axes, the mixed derivative from the difference of the two diagonal
// second derivatives (equal to the four-point cross stencil away from
// the boundary). Cut arms use the boundary value at the exact cut point
// through one-sided quadratic interpolation; the stencil stays exact on
// quadratics.
SymMatrix discrete_hessian(const GridField& u, int p);
HessianField discrete_hessian_field(const GridField& u);

// v = u + (x^2 + y^2)/2 node-wise (boundary data shifted too), and back.
GridField krylov_reduce(const GridField& u);
GridField krylov_unreduce(const GridField& v);

// Samples the radial profile on a unit-disk grid; the boundary trace is
// exactly zero.
GridField radial_field(const RadialProfile& profile,
                       std::shared_ptr<const Grid> grid);

}  // namespace twistpde
