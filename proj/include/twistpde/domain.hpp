#pragma once

#include <array>
#include <string>

namespace twistpde {

// Strictly convex planar domain with a proper smooth defining function
// rho: negative inside, zero on the boundary, gradient nonvanishing on a
// boundary collar, D^2 rho >= C_rho I.
//
//   disk(R):       rho = (x^2 + y^2)/R^2 - 1
//   ellipse(a, b): rho = (x/a)^2 + (y/b)^2 - 1
class ConvexDomain {
public:
  static ConvexDomain disk(double radius);
  static ConvexDomain ellipse(double a, double b);

  double rho(double x, double y) const;
  std::array<double, 2> grad_rho(double x, double y) const;
  double convexity_modulus() const { return c_rho_; }  // C_rho
  bool inside(double x, double y) const { return rho(x, y) < 0.0; }

  double semi_a() const { return a_; }
  double semi_b() const { return b_; }
  bool is_disk() const { return a_ == b_; }
  std::string describe() const;

  // Smallest s in (0, s_max] with rho(p + s d) = 0, for p inside and
  // p + s_max d outside or on the boundary. Exact (quadratic formula).
  double boundary_cut(double px, double py, double dx, double dy,
                      double s_max) const;

  // Bounding box half-widths.
  double extent_x() const { return a_; }
  double extent_y() const { return b_; }

private:
  ConvexDomain(double a, double b);
  double a_, b_;
  double c_rho_;
};

}  // namespace twistpde
