#pragma once

// Hand-rolled generators for the property tests.

#include <complex>
#include <random>
#include <vector>

#include "fatou/error.hpp"
#include "fatou/rational_map.hpp"

namespace fatou::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng)};
}

inline Complex random_in_box(Rng& rng, double half_width) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  return {u(rng), u(rng)};
}

inline Polynomial random_polynomial(Rng& rng, int degree) {
  std::vector<Complex> c;
  for (int k = 0; k <= degree; ++k) c.push_back(random_complex(rng));
  return Polynomial(std::move(c));
}

/// A random map of exactly the given degree: numerator and denominator of
/// degrees chosen at random with the larger equal to `degree`.
inline RationalMap random_map(Rng& rng, int degree) {
  std::uniform_int_distribution<int> pick(0, degree);
  for (;;) {
    const bool num_top = rng() % 2 == 0;
    const int other = pick(rng);
    try {
      const Polynomial a = random_polynomial(rng, degree);
      const Polynomial b = random_polynomial(rng, other);
      RationalMap f = num_top ? normalize(a, b) : normalize(b, a);
      if (f.degree() == degree) return f;
    } catch (const InvalidArgument&) {
      // degree < 2 or a near-common root; draw again
    }
  }
}

}  // namespace fatou::testing
