#include "twistpde/scalar_transform.hpp"

#include <cmath>

namespace twistpde {

namespace {
constexpr int kValidationPoints = 10000;
}

ScalarTransform ScalarTransform::power_root(int p, double domain_lo,
                                            double domain_hi) {
  if (p < 1)
    throw PreconditionError("power_root: exponent denominator must be >= 1");
  if (domain_lo <= 0.0 || domain_hi <= domain_lo)
    throw PreconditionError("power_root: need 0 < domain_lo < domain_hi");
  ScalarTransform t;
  t.kind_ = TransformKind::PowerRoot;
  t.p_ = p;
  t.lo_ = domain_lo;
  t.hi_ = domain_hi;
  t.validate_on_grid();
  return t;
}

ScalarTransform ScalarTransform::affine(double slope, double intercept,
                                        double domain_lo, double domain_hi) {
  if (!(slope > 0.0))
    throw PreconditionError("affine transform: slope must be positive");
  ScalarTransform t;
  t.kind_ = TransformKind::Affine;
  t.a_ = slope;
  t.b_ = intercept;
  t.lo_ = domain_lo;
  t.hi_ = domain_hi;
  t.validate_on_grid();
  return t;
}

ScalarTransform ScalarTransform::chain(std::vector<ScalarTransform> links,
                                       double domain_lo, double domain_hi) {
  if (links.empty()) throw PreconditionError("chain: no links");
  ScalarTransform t;
  t.kind_ = TransformKind::Chain;
  t.lo_ = domain_lo;
  t.hi_ = domain_hi;
  t.links_ =
      std::make_shared<const std::vector<ScalarTransform>>(std::move(links));
  t.validate_on_grid();
  return t;
}

void ScalarTransform::validate_on_grid() const {
  const double step = (hi_ - lo_) / (kValidationPoints - 1);
  for (int i = 0; i < kValidationPoints; ++i) {
    double x = lo_ + i * step;
    double g1 = d1(x), g2 = d2(x);
    if (!(g1 > 0.0))
      throw PreconditionError("transform: G' <= 0 at x = " +
                              std::to_string(x));
    if (!(g2 <= 1e-14 * (1.0 + std::abs(g1))))
      throw PreconditionError("transform: G'' > 0 at x = " +
                              std::to_string(x));
  }
}

double ScalarTransform::value(double x) const {
  switch (kind_) {
    case TransformKind::PowerRoot:
      if (x < 0.0)
        throw PreconditionError("power_root: value requested at x < 0");
      return std::pow(x, 1.0 / p_);
    case TransformKind::Affine:
      return a_ * x + b_;
    case TransformKind::Chain: {
      double y = x;
      for (const auto& g : *links_) y = g.value(y);
      return y;
    }
  }
  throw InternalError("transform: unknown kind");
}

double ScalarTransform::d1(double x) const {
  switch (kind_) {
    case TransformKind::PowerRoot:
      if (x < lo_)
        throw PreconditionError(
            "power_root: derivative requested below domain_lo");
      return (1.0 / p_) * std::pow(x, 1.0 / p_ - 1.0);
    case TransformKind::Affine:
      return a_;
    case TransformKind::Chain: {
      double y = x, d = 1.0;
      for (const auto& g : *links_) {
        d *= g.d1(y);
        y = g.value(y);
      }
      return d;
    }
  }
  throw InternalError("transform: unknown kind");
}

double ScalarTransform::d2(double x) const {
  switch (kind_) {
    case TransformKind::PowerRoot: {
      if (x < lo_)
        throw PreconditionError(
            "power_root: derivative requested below domain_lo");
      double inv = 1.0 / p_;
      return inv * (inv - 1.0) * std::pow(x, inv - 2.0);
    }
    case TransformKind::Affine:
      return 0.0;
    case TransformKind::Chain: {
      // H'' = G''(H_prev) H_prev'^2 + G'(H_prev) H_prev'' folded left.
      double y = x, d1acc = 1.0, d2acc = 0.0;
      for (const auto& g : *links_) {
        double g1 = g.d1(y), g2 = g.d2(y);
        d2acc = g2 * d1acc * d1acc + g1 * d2acc;
        d1acc *= g1;
        y = g.value(y);
      }
      return d2acc;
    }
  }
  throw InternalError("transform: unknown kind");
}

int ScalarTransform::power() const {
  if (kind_ != TransformKind::PowerRoot)
    throw PreconditionError("transform: not a power root");
  return p_;
}

double ScalarTransform::slope() const {
  if (kind_ != TransformKind::Affine)
    throw PreconditionError("transform: not affine");
  return a_;
}

double ScalarTransform::intercept() const {
  if (kind_ != TransformKind::Affine)
    throw PreconditionError("transform: not affine");
  return b_;
}

const std::vector<ScalarTransform>& ScalarTransform::links() const {
  if (kind_ != TransformKind::Chain)
    throw PreconditionError("transform: not a chain");
  return *links_;
}

std::string ScalarTransform::describe() const {
  switch (kind_) {
    case TransformKind::PowerRoot:
      return "x^(1/" + std::to_string(p_) + ")";
    case TransformKind::Affine:
      return std::to_string(a_) + "*x + " + std::to_string(b_);
    case TransformKind::Chain: {
      std::string s = "chain[";
      for (size_t i = 0; i < links_->size(); ++i) {
        if (i) s += ", ";
        s += (*links_)[i].describe();
      }
      return s + "]";
    }
  }
  return "?";
}

TransformChain build_chain(std::vector<ScalarTransform> links, double set_lo,
                           double set_hi) {
  if (links.empty()) throw PreconditionError("build_chain: no links");
  if (!(set_hi > set_lo))
    throw PreconditionError("build_chain: empty compact set");

  const int grid = 10000;
  double in_lo = set_lo, in_hi = set_hi;
  for (size_t k = 0; k < links.size(); ++k) {
    const ScalarTransform& g = links[k];
    if (in_lo < g.domain_lo() || in_hi > g.domain_hi())
      throw ChainPremiseError(
          "build_chain: link " + std::to_string(k) +
              " does not cover the incoming range [" + std::to_string(in_lo) +
              ", " + std::to_string(in_hi) + "]",
          static_cast<int>(k), in_lo, 0.0);
    const double step = (in_hi - in_lo) / (grid - 1);
    for (int i = 0; i < grid; ++i) {
      double x = in_lo + i * step;
      double v = g.value(x), d = g.d1(x);
      if (v < 0.0)
        throw ChainPremiseError("build_chain: link " + std::to_string(k) +
                                    " takes a negative value",
                                static_cast<int>(k), x, v);
      if (d < 1.0)
        throw ChainPremiseError("build_chain: link " + std::to_string(k) +
                                    " has derivative below 1",
                                static_cast<int>(k), x, d);
    }
    // Links are increasing, so the image of the interval is given by its
    // endpoints.
    in_lo = g.value(in_lo);
    in_hi = g.value(in_hi);
  }

  TransformChain chain;
  chain.set_lo = set_lo;
  chain.set_hi = set_hi;
  chain.links = links;
  for (size_t k = 1; k <= links.size(); ++k) {
    std::vector<ScalarTransform> prefix(links.begin(), links.begin() + k);
    chain.prefixes.push_back(
        ScalarTransform::chain(std::move(prefix), set_lo, set_hi));
  }
  return chain;
}

}  // namespace twistpde
