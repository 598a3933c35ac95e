#include "spbzo/rng.hpp"

#include <cmath>
#include <numbers>

namespace spbzo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + splitmix64(index + 1));
}

double NormalStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; 1 - U keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Vec NormalStream::normal_vec(Eigen::Index dim) {
  Vec u(dim);
  for (Eigen::Index i = 0; i < dim; ++i) u[i] = normal();
  return u;
}

Vec NormalStream::uniform_in_ball(const Vec& center, double radius) {
  const Eigen::Index dim = center.size();
  Vec dir = normal_vec(dim);
  double n = dir.norm();
  while (n == 0.0) {
    dir = normal_vec(dim);
    n = dir.norm();
  }
  const double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(dim));
  return center + (r / n) * dir;
}

}  // namespace spbzo
