#pragma once

#include <utility>

#include "fatou/polynomial.hpp"
#include "fatou/sphere.hpp"

namespace fatou {

/// z -> (a z + b) / (c z + d) with ad - bc != 0.
class MoebiusTransform {
 public:
  MoebiusTransform(Complex a, Complex b, Complex c, Complex d);

  static MoebiusTransform identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// z -> 1/z
  static MoebiusTransform inversion() { return {0.0, 1.0, 1.0, 0.0}; }
  /// Sends p to infinity: z -> 1/(z - p).
  static MoebiusTransform send_to_infinity(Complex p) { return {0.0, 1.0, 1.0, -p}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }

  MoebiusTransform inverse() const { return {d_, -b_, -c_, a_}; }
  /// this o other
  MoebiusTransform compose(const MoebiusTransform& other) const;

  SpherePoint operator()(const SpherePoint& p) const;

 private:
  Complex a_, b_, c_, d_;
};

/// m o f o m^-1 for f = num/den, as a (numerator, denominator) pair.
std::pair<Polynomial, Polynomial> moebius_conjugate(const Polynomial& f_num, const Polynomial& f_den,
                                                    const MoebiusTransform& m);

}  // namespace fatou
