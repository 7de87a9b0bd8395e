#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace stabil {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; derives independent, reproducible seeds per stream.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::complex<double> uniform_in_disk(Rng& rng, std::complex<double> center, double radius) {
  const double r = radius * std::sqrt(uniform(rng, 0.0, 1.0));
  const double theta = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return center + std::polar(r, theta);
}

inline std::complex<double> uniform_in_box(Rng& rng, std::complex<double> center, double half_width) {
  return center + std::complex<double>(uniform(rng, -half_width, half_width),
                                       uniform(rng, -half_width, half_width));
}

inline std::complex<double> uniform_in_ring(Rng& rng, std::complex<double> center, double r_inner,
                                            double r_outer) {
  const double r = std::sqrt(uniform(rng, r_inner * r_inner, r_outer * r_outer));
  return center + std::polar(r, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

inline std::complex<double> unit_phase(Rng& rng) {
  return std::polar(1.0, uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

}  // namespace stabil
