#pragma once

// Small seeded generators shared by the property tests.

#include "drg/families.hpp"

#include <random>
#include <vector>

namespace drg::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

// A random finite family small enough for exact work at diameter <= 6.
inline FamilySpec random_finite_family() {
  switch (uniform_int(0, 4)) {
    case 0: return FamilySpec::complete(uniform_int(2, 12));
    case 1: return FamilySpec::hamming(uniform_int(1, 6), uniform_int(2, 6));
    case 2: {
      int d = uniform_int(1, 5);
      return FamilySpec::johnson(2 * d + uniform_int(0, 5), d);
    }
    case 3: {
      int d = uniform_int(1, 4);
      return FamilySpec::q_johnson(uniform_int(2, 4), 2 * d + uniform_int(0, 3), d);
    }
    default: return FamilySpec::octahedron();
  }
}

inline std::vector<FamilySpec> random_finite_families(std::size_t count) {
  std::vector<FamilySpec> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_finite_family());
  return out;
}

// Finite families whose graphs enumerate quickly.
inline std::vector<FamilySpec> enumerable_families() {
  return {FamilySpec::complete(5),      FamilySpec::hamming(3, 3),     FamilySpec::hamming(4, 2),
          FamilySpec::hamming(2, 5),    FamilySpec::johnson(6, 3),     FamilySpec::johnson(7, 2),
          FamilySpec::octahedron(),     FamilySpec::q_johnson(2, 4, 2), FamilySpec::q_johnson(3, 4, 2)};
}

}  // namespace drg::test
