#include "twistpde/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "twistpde/errors.hpp"
#include "twistpde/symmetric_functions.hpp"

namespace twistpde {

double radial_polynomial(int n, double A) {
  std::array<double, 8> lam{};
  for (int i = 0; i < n; ++i) lam[i] = A;
  double v = 0.0;
  for (int k = 2; k <= n; ++k)
    v += elem_sym(k, std::span<const double>(lam.data(), n));
  return v;
}

double radial_coefficient(int n, double f_const) {
  if (n < 2 || n > 8)
    throw PreconditionError("radial_coefficient: n must be in [2, 8]");
  if (!(f_const > 0.0))
    throw PreconditionError("radial_coefficient: f must be positive");
  double lo = 0.0, hi = 1.0 + f_const;  // P(hi) >= hi^2 > f
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    (radial_polynomial(n, mid) < f_const ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double reduction_identity_check(std::span<const double> lam) {
  const int n = static_cast<int>(lam.size());
  double prod = 1.0, sum = 0.0;
  for (double l : lam) {
    prod *= l + 1.0;
    sum += l + 1.0;
  }
  double sk = 0.0;
  for (int k = 2; k <= n; ++k) sk += elem_sym(k, lam);
  return std::abs(prod - sum - (sk - (n - 1.0)));
}

namespace {

double counter_poly(int n, double c, double A) {
  return std::pow(A, n) - n * A + c;
}

double bisect_root(int n, double c, double lo, double hi) {
  double flo = counter_poly(n, c, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = counter_poly(n, c, mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RootReport counterexample_roots(int n, double c) {
  if (n < 2 || n > 8)
    throw PreconditionError("counterexample_roots: n must be in [2, 8]");
  if (!(c > 0.0))
    throw PreconditionError("counterexample_roots: c must be positive");

  RootReport rep;
  rep.coefficients.assign(n + 1, 0.0);
  rep.coefficients[0] = c;
  rep.coefficients[1] = -static_cast<double>(n);
  rep.coefficients[n] = 1.0;

  // Bracket grid: log-spaced over (0, 1 + n + c] plus the stationary
  // point A = 1 where the minimum 1 - n + c sits.
  const int grid_pts = 512;
  const double hi = 1.0 + n + c;
  const double lo = 1e-9;
  std::vector<double> grid;
  grid.reserve(grid_pts + 1);
  for (int i = 0; i < grid_pts; ++i)
    grid.push_back(lo * std::pow(hi / lo, double(i) / (grid_pts - 1)));
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());

  double qmin = counter_poly(n, c, 1.0);
  if (qmin == 0.0) {
    rep.positive_roots.push_back(1.0);
    rep.tangent = true;
  }
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    double fa = counter_poly(n, c, grid[i]);
    double fb = counter_poly(n, c, grid[i + 1]);
    if (fa == 0.0 && grid[i] != 1.0) {
      rep.positive_roots.push_back(grid[i]);
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0))
      rep.positive_roots.push_back(bisect_root(n, c, grid[i], grid[i + 1]));
  }
  std::sort(rep.positive_roots.begin(), rep.positive_roots.end());
  // Merge near-duplicates from adjacent brackets.
  rep.positive_roots.erase(
      std::unique(rep.positive_roots.begin(), rep.positive_roots.end(),
                  [&](double a, double b) { return b - a < 1e-12 * (1 + b); }),
      rep.positive_roots.end());

  for (double r : rep.positive_roots)
    if (r > 1.0) rep.cone_admissible_roots.push_back(r);
  rep.existence = !rep.cone_admissible_roots.empty();
  return rep;
}

double existence_transition(int n, double tol) {
  // existence(c) is monotone decreasing; bracket the flip.
  double lo = 0.5 * (n - 1), hi = 2.0 * (n - 1) + 1.0;
  if (!counterexample_roots(n, lo).existence)
    throw InternalError("existence_transition: lower bracket already empty");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    (counterexample_roots(n, mid).existence ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace twistpde
