#pragma once

// Seeded sampling helpers. Raw 64-bit engine output is mapped to doubles by
// hand so that samples are identical across standard library vendors.

#include <cstdint>
#include <random>

#include "crossmetric/numerics.hpp"

namespace crossmetric {

using Rng = std::mt19937_64;

/// Uniform in [-1, 1).
inline double uniform_symmetric(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

/// Uniform in [0, 1).
inline double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline Complex complex_uniform(Rng& rng) {
  const double re = uniform_symmetric(rng);
  const double im = uniform_symmetric(rng);
  return {re, im};
}

/// Uniform integer in [0, bound).
inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return static_cast<std::size_t>(uniform_unit(rng) * static_cast<double>(bound));
}

inline ComplexVector random_unit_vector(Rng& rng, Eigen::Index dim) {
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_uniform(rng);
  return v / v.norm();
}

}  // namespace crossmetric
