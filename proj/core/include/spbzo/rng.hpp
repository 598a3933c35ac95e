#pragma once

#include <cstdint>
#include <random>

#include "spbzo/types.hpp"

namespace spbzo {

std::uint64_t splitmix64(std::uint64_t x);

// Per-seed substream for seed index i under a master seed. Independent of how
// many other indices exist.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Seeded source of uniforms and standard normals. mt19937_64 bits are turned
// into doubles and normals by our own code so a seed maps to the same stream
// on every standard library.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Vec normal_vec(Eigen::Index dim);
  // Uniform point of the closed ball B(center, radius).
  Vec uniform_in_ball(const Vec& center, double radius);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spbzo
