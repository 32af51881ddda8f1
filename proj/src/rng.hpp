#pragma once

// Seeded deterministic sampling helpers. mt19937_64 output is pinned by the
// standard, and the uniform mappings below avoid distribution objects whose
// streams may differ between standard library implementations.

#include <cmath>
#include <cstdint>
#include <random>

namespace qcb {

inline double uniform01(std::mt19937_64& rng) {
  return std::ldexp(static_cast<double>(rng() >> 11), -53);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  // inclusive range; desk-scale spans make modulo bias irrelevant
  return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

// standard normal via Box-Muller (polar-free form keeps the stream simple)
inline double normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace qcb
