#pragma once

#include <random>

#include "patcoh/field.hpp"
#include "patcoh/linalg.hpp"

namespace patcoh::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rat random_rat(long bound = 9) {
  long den = 0;
  while (den == 0) den = uniform(1, bound);
  Rat r(uniform(-bound, bound), den);
  r.canonicalize();
  return r;
}

inline FElem random_felem(FieldSpec f, long bound = 9) {
  return FElem(f, random_rat(bound), f.is_rational() ? Rat(0) : random_rat(bound));
}

inline IntMatrix random_int_matrix(std::size_t r, std::size_t c, long bound = 5) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(-bound, bound);
  return m;
}

/// Product of random elementary operations: unimodular with small entries.
inline IntMatrix random_unimodular(std::size_t n, int steps = 12) {
  IntMatrix u = identity_matrix(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1));
    auto k = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 2));
    if (k >= i) ++k;
    const long q = uniform(-2, 2);
    for (std::size_t j = 0; j < n; ++j) u(i, j) += q * u(k, j);
    if (uniform(0, 3) == 0) u.swap_rows(i, k);
  }
  return u;
}

}  // namespace patcoh::test
