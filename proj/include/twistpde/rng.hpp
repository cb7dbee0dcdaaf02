#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "twistpde/sym_matrix.hpp"

namespace twistpde {

// Seeded sampling used by every certification sweep. One Sampler per
// sweep; results are reproducible for a fixed seed.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

  // Wishart-style R R^T + eps I with iid standard normal R.
  SymMatrix spd(int n, double eps = 1e-3);
  // iid standard normal entries on the packed triangle.
  SymMatrix sym_gaussian(int n);
  std::vector<double> uniform_vec(int n, double lo, double hi);

  std::mt19937_64& raw() { return gen_; }

private:
  std::mt19937_64 gen_;
};

}  // namespace twistpde
