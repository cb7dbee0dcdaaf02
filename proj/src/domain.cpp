#include "twistpde/domain.hpp"

#include <cmath>

#include "twistpde/errors.hpp"

namespace twistpde {

ConvexDomain::ConvexDomain(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw PreconditionError("ConvexDomain: semi-axes must be positive");
  c_rho_ = 2.0 / (std::max(a, b) * std::max(a, b));
  // Sampled sanity: gradient nonvanishing along the boundary.
  for (int i = 0; i < 64; ++i) {
    double t = 2.0 * M_PI * i / 64.0;
    auto g = grad_rho(a_ * std::cos(t), b_ * std::sin(t));
    if (std::hypot(g[0], g[1]) < 1e-12)
      throw PreconditionError("ConvexDomain: defining gradient vanishes");
  }
}

ConvexDomain ConvexDomain::disk(double radius) {
  return ConvexDomain(radius, radius);
}

ConvexDomain ConvexDomain::ellipse(double a, double b) {
  return ConvexDomain(a, b);
}

double ConvexDomain::rho(double x, double y) const {
  return (x / a_) * (x / a_) + (y / b_) * (y / b_) - 1.0;
}

std::array<double, 2> ConvexDomain::grad_rho(double x, double y) const {
  return {2.0 * x / (a_ * a_), 2.0 * y / (b_ * b_)};
}

std::string ConvexDomain::describe() const {
  if (is_disk()) return "disk(r=" + std::to_string(a_) + ")";
  return "ellipse(a=" + std::to_string(a_) + ", b=" + std::to_string(b_) + ")";
}

double ConvexDomain::boundary_cut(double px, double py, double dx, double dy,
                                  double s_max) const {
  // rho(p + s d) = alpha s^2 + beta s + gamma with gamma < 0.
  double alpha = (dx / a_) * (dx / a_) + (dy / b_) * (dy / b_);
  double beta = 2.0 * (px * dx / (a_ * a_) + py * dy / (b_ * b_));
  double gamma = rho(px, py);
  if (!(gamma < 0.0))
    throw PreconditionError("boundary_cut: start point is not interior");
  double disc = beta * beta - 4.0 * alpha * gamma;
  if (disc < 0.0 || alpha <= 0.0)
    throw InternalError("boundary_cut: no boundary crossing found");
  // gamma < 0 guarantees one positive and one negative root; take the
  // positive one, written in the cancellation-free form.
  double s = (-beta + std::sqrt(disc)) / (2.0 * alpha);
  if (beta > 0.0) s = (2.0 * -gamma) / (beta + std::sqrt(disc));
  if (s <= 0.0 || s > s_max * (1.0 + 1e-12))
    throw InternalError("boundary_cut: crossing outside the segment");
  return std::min(s, s_max);
}

}  // namespace twistpde
