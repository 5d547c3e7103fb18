#pragma once

#include <complex>
#include <string>

namespace fatou {

using Complex = std::complex<double>;

/// Default tolerance for treating two sphere points as equal.
inline constexpr double kChordalTolerance = 1e-8;

/// Point of the Riemann sphere in homogeneous coordinates [z : w].
///
/// The pair is kept scaled so that max(|z|, |w|) == 1, which makes both
/// affine charts usable without overflow.  Infinity is [1 : 0].
class SpherePoint {
 public:
  SpherePoint() : z_(0.0), w_(1.0) {}

  /// Finite point z of the plane.
  SpherePoint(Complex z);  // NOLINT(google-explicit-constructor)

  /// From homogeneous coordinates; throws InvalidArgument if both vanish.
  static SpherePoint homogeneous(Complex z, Complex w);
  static SpherePoint infinity() { return homogeneous(1.0, 0.0); }

  Complex z() const { return z_; }
  Complex w() const { return w_; }

  bool is_infinite() const { return w_ == Complex(0.0); }

  /// True when the finite chart z/w is the better-conditioned one.
  bool in_finite_chart() const { return std::abs(z_) <= std::abs(w_); }

  /// z/w; infinite components if the point is infinity.
  Complex finite_value() const;

  /// Value in the chart at infinity, w/z.
  Complex value_at_infinity_chart() const;

  SpherePoint conj() const { return homogeneous(std::conj(z_), std::conj(w_)); }

  std::string to_string() const;

 private:
  Complex z_;
  Complex w_;
};

/// Chordal distance 2|a-b| / sqrt((1+|a|^2)(1+|b|^2)), in [0, 2].
double chordal(const SpherePoint& a, const SpherePoint& b);
double chordal(Complex a, Complex b);

inline bool near(const SpherePoint& a, const SpherePoint& b, double tol = kChordalTolerance) {
  return chordal(a, b) < tol;
}

}  // namespace fatou
