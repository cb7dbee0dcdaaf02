#include "twistpde/grid.hpp"

#include <cmath>

#include "twistpde/errors.hpp"

namespace twistpde {

namespace {
// Minimum admissible cut fraction; below this the node sits so close to
// the boundary that the one-sided stencil is numerically meaningless.
constexpr double kThetaMin = 1e-7;
}  // namespace

const std::array<std::array<int, 2>, Grid::kDirs>& Grid::directions() {
  static const std::array<std::array<int, 2>, kDirs> dirs = {{{1, 0},
                                                              {-1, 0},
                                                              {0, 1},
                                                              {0, -1},
                                                              {1, 1},
                                                              {-1, -1},
                                                              {-1, 1},
                                                              {1, -1}}};
  return dirs;
}

std::shared_ptr<const Grid> Grid::build(const ConvexDomain& domain, double h) {
  if (!(h > 0.0)) throw PreconditionError("Grid: spacing must be positive");
  auto grid = std::shared_ptr<Grid>(new Grid(domain, h));
  const int mi = static_cast<int>(std::ceil(domain.extent_x() / h)) + 2;
  const int mj = static_cast<int>(std::ceil(domain.extent_y() / h)) + 2;
  grid->mi_ = mi;
  grid->mj_ = mj;
  grid->lattice_.assign(4 * mi * mj, -1);

  auto coord = [h](int k) { return (k + 0.5) * h; };
  for (int i = -mi; i < mi; ++i)
    for (int j = -mj; j < mj; ++j) {
      double x = coord(i), y = coord(j);
      if (domain.inside(x, y)) {
        grid->lattice_[(i + mi) * 2 * mj + (j + mj)] =
            static_cast<int>(grid->nodes_.size());
        grid->nodes_.push_back({i, j, x, y});
      }
    }
  if (grid->nodes_.empty())
    throw PreconditionError("Grid: no interior nodes; grid spacing " +
                            std::to_string(h) + " is too coarse for " +
                            domain.describe());

  grid->arms_.resize(grid->nodes_.size());
  const auto& dirs = directions();
  for (size_t p = 0; p < grid->nodes_.size(); ++p) {
    const Node& nd = grid->nodes_[p];
    for (int d = 0; d < kDirs; ++d) {
      int ti = nd.i + dirs[d][0], tj = nd.j + dirs[d][1];
      int nb = grid->find(ti, tj);
      Arm& arm = grid->arms_[p][d];
      if (nb >= 0) {
        arm.neighbor = nb;
        continue;
      }
      double len = grid->arm_length(d);
      double ux = dirs[d][0] * h / len, uy = dirs[d][1] * h / len;
      double s = domain.boundary_cut(nd.x, nd.y, ux, uy, len);
      arm.neighbor = -1;
      arm.theta = s / len;
      arm.bx = nd.x + s * ux;
      arm.by = nd.y + s * uy;
      grid->min_theta_ = std::min(grid->min_theta_, arm.theta);
      if (arm.theta < kThetaMin)
        throw PreconditionError(
            "Grid: node at (" + std::to_string(nd.x) + ", " +
            std::to_string(nd.y) +
            ") lacks stencil support (cut fraction below 1e-7); refine or "
            "shift the grid");
    }
  }
  return grid;
}

int Grid::find(int i, int j) const {
  if (i < -mi_ || i >= mi_ || j < -mj_ || j >= mj_) return -1;
  return lattice_[(i + mi_) * 2 * mj_ + (j + mj_)];
}

GridField::GridField(std::shared_ptr<const Grid> grid)
    : grid_(std::move(grid)) {
  values_.assign(grid_->num_nodes(), 0.0);
  cut_.assign(grid_->num_nodes() * Grid::kDirs, 0.0);
}

GridField GridField::from_function(std::shared_ptr<const Grid> grid,
                                   const ScalarFn& fn) {
  return with_boundary(std::move(grid), fn, fn);
}

GridField GridField::with_boundary(std::shared_ptr<const Grid> grid,
                                   const ScalarFn& interior,
                                   const ScalarFn& boundary) {
  GridField f(grid);
  for (int p = 0; p < f.size(); ++p) {
    const Grid::Node& nd = grid->node(p);
    f.values_[p] = interior(nd.x, nd.y);
    for (int d = 0; d < Grid::kDirs; ++d) {
      const Grid::Arm& arm = grid->arm(p, d);
      if (arm.neighbor < 0)
        f.set_cut_value(p, d, boundary(arm.bx, arm.by));
    }
  }
  return f;
}

double GridField::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridField::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

namespace {

// Second derivative along one grid line through quadratic interpolation
// of (u_minus, u_center, u_plus) at distances (s_minus, s_plus).
double directional_d2(const GridField& u, int p, int dplus, int dminus) {
  const Grid& g = u.grid();
  const double len = g.arm_length(dplus);
  const Grid::Arm& ap = g.arm(p, dplus);
  const Grid::Arm& am = g.arm(p, dminus);
  double sp = len, sm = len, up, um;
  if (ap.neighbor >= 0) {
    up = u.value(ap.neighbor);
  } else {
    sp = ap.theta * len;
    up = u.cut_value(p, dplus);
  }
  if (am.neighbor >= 0) {
    um = u.value(am.neighbor);
  } else {
    sm = am.theta * len;
    um = u.cut_value(p, dminus);
  }
  double u0 = u.value(p);
  // Difference form: exactly zero on constants, exact on quadratics.
  return 2.0 * ((up - u0) / sp + (um - u0) / sm) / (sp + sm);
}

}  // namespace

SymMatrix discrete_hessian(const GridField& u, int p) {
  double dxx = directional_d2(u, p, 0, 1);
  double dyy = directional_d2(u, p, 2, 3);
  double dpp = directional_d2(u, p, 4, 5);  // along (1,1)/sqrt(2)
  double dmm = directional_d2(u, p, 6, 7);  // along (-1,1)/sqrt(2)
  SymMatrix H(2);
  H.set(0, 0, dxx);
  H.set(1, 1, dyy);
  H.set(0, 1, 0.5 * (dpp - dmm));
  return H;
}

HessianField discrete_hessian_field(const GridField& u) {
  HessianField f;
  f.grid = u.grid_ptr();
  f.H.reserve(u.size());
  for (int p = 0; p < u.size(); ++p) f.H.push_back(discrete_hessian(u, p));
  return f;
}

namespace {

GridField shift_by_half_r2(const GridField& u, double sign) {
  GridField v = u;
  const Grid& g = u.grid();
  for (int p = 0; p < u.size(); ++p) {
    const Grid::Node& nd = g.node(p);
    v.value(p) = u.value(p) + sign * 0.5 * (nd.x * nd.x + nd.y * nd.y);
    for (int d = 0; d < Grid::kDirs; ++d) {
      const Grid::Arm& arm = g.arm(p, d);
      if (arm.neighbor < 0)
        v.set_cut_value(p, d,
                        u.cut_value(p, d) +
                            sign * 0.5 * (arm.bx * arm.bx + arm.by * arm.by));
    }
  }
  return v;
}

}  // namespace

GridField krylov_reduce(const GridField& u) { return shift_by_half_r2(u, 1.0); }

GridField krylov_unreduce(const GridField& v) {
  return shift_by_half_r2(v, -1.0);
}

GridField radial_field(const RadialProfile& profile,
                       std::shared_ptr<const Grid> grid) {
  if (!grid->domain().is_disk() || grid->domain().semi_a() != 1.0)
    throw PreconditionError("radial_field: grid must cover the unit disk");
  GridField f(grid);
  for (int p = 0; p < f.size(); ++p) {
    const Grid::Node& nd = grid->node(p);
    f.value(p) = profile.value(nd.x * nd.x + nd.y * nd.y);
    // Boundary trace is identically zero on the unit circle.
  }
  return f;
}

}  // namespace twistpde
