#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twistpde/errors.hpp"

namespace twistpde {

enum class TransformKind { PowerRoot, Affine, Chain };

// Increasing concave scalar transform G with G' > 0 and G'' <= 0 on its
// declared interval. Construction samples both conditions on a 10^4-point
// grid and rejects violators with a witness point.
//
//   power_root(p): G(x) = x^(1/p), valid for x >= domain_lo > 0
//                  (the value itself extends continuously to x >= 0)
//   affine:        G(x) = slope * x + intercept, slope > 0
//   chain:         composition of links, innermost first
class ScalarTransform {
public:
  static ScalarTransform power_root(int p, double domain_lo = 1e-10,
                                    double domain_hi = 1e6);
  static ScalarTransform affine(double slope, double intercept,
                                double domain_lo = -1e6,
                                double domain_hi = 1e6);
  static ScalarTransform chain(std::vector<ScalarTransform> links,
                               double domain_lo, double domain_hi);

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;

  TransformKind kind() const { return kind_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  int power() const;
  double slope() const;
  double intercept() const;
  const std::vector<ScalarTransform>& links() const;

  std::string describe() const;

private:
  ScalarTransform() = default;
  void validate_on_grid() const;

  TransformKind kind_ = TransformKind::Affine;
  double lo_ = 0.0, hi_ = 1.0;
  int p_ = 2;                    // PowerRoot
  double a_ = 1.0, b_ = 0.0;     // Affine
  std::shared_ptr<const std::vector<ScalarTransform>> links_;  // Chain
};

// Raised when a chain link fails the composition premises (G >= 0,
// G' >= 1, range containment) on the declared compact set.
class ChainPremiseError : public PreconditionError {
public:
  ChainPremiseError(const std::string& what, int link_index, double witness_x,
                    double witness_value)
      : PreconditionError(what),
        link_index(link_index),
        witness_x(witness_x),
        witness_value(witness_value) {}
  int link_index;
  double witness_x;
  double witness_value;
};

// Composition H_k = G_k o ... o G_1 with every prefix kept, certified on
// the compact set [set_lo, set_hi].
struct TransformChain {
  std::vector<ScalarTransform> links;
  std::vector<ScalarTransform> prefixes;  // prefixes[k-1] = H_k
  double set_lo = 0.0;
  double set_hi = 0.0;
  const ScalarTransform& composed() const { return prefixes.back(); }
};

// Validates the premises link by link (sampled on 10^4 points) and
// throws ChainPremiseError with a witness on failure.
TransformChain build_chain(std::vector<ScalarTransform> links, double set_lo,
                           double set_hi);

}  // namespace twistpde
