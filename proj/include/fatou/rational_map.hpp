#pragma once

#include <vector>

#include "fatou/moebius.hpp"
#include "fatou/polynomial.hpp"
#include "fatou/sphere.hpp"

namespace fatou {

/// Largest d^n for which compose_self materializes coefficients.
inline constexpr long kComposeDegreeBound = 4096;

/// Relative threshold below which coefficients produced by cancellation
/// are treated as zero.
inline constexpr double kCoefficientFloor = 1e-13;

/// f(z) = num(z) / den(z) with num and den coprime.
///
/// Construct through normalize(); the raw constructor assumes coprimality
/// and is reserved for compositions of maps already known to be coprime.
class RationalMap {
 public:
  RationalMap(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  int degree() const { return degree_; }

  /// f(x) on the sphere, via whichever chart keeps the arithmetic bounded.
  SpherePoint operator()(const SpherePoint& x) const;
  Complex operator()(Complex z) const { return (*this)(SpherePoint(z)).finite_value(); }

  /// num' den - num den'; its roots are the finite critical points.
  Polynomial wronskian() const;

  /// Derivative of f at x read in the charts of x and f(x): the finite
  /// chart when |.| <= 1, the chart at infinity otherwise.  Products of
  /// these along a cycle give its multiplier.
  Complex chart_derivative(const SpherePoint& x) const;

  /// Numerator and denominator homogenized at the map degree, read in the
  /// chart at infinity: z^d num(1/z), z^d den(1/z).
  const Polynomial& num_at_infinity() const { return num_inf_; }
  const Polynomial& den_at_infinity() const { return den_inf_; }

  /// 1/f(1/z): the same map seen from infinity.
  RationalMap conjugate_by_inversion() const;

 private:
  Polynomial num_;
  Polynomial den_;
  int degree_;
  Polynomial num_inf_;
  Polynomial den_inf_;
};

/// Cancels common roots, records the degree, rejects degree < 2.
///
/// Throws InvalidArgument when the denominator is zero or the reduced map
/// has degree below two, and when the reduced pair still fails the
/// coprimality test.
RationalMap normalize(const Polynomial& raw_num, const Polynomial& raw_den);

/// Scaled resultant-style coprimality measure: min over roots r of den of
/// |num(r)| / scale(num, r).  Zero iff num and den share a root.
double coprimality_measure(const Polynomial& num, const Polynomial& den);

inline constexpr double kCoprimalityThreshold = 1e-10;

SpherePoint eval_sphere(const RationalMap& f, const SpherePoint& x);

struct CriticalPoint {
  SpherePoint location;
  int local_degree = 2;
};

/// Critical points with local degrees; sum of (local_degree - 1) is 2d - 2.
/// Finite ones are sorted by real then imaginary part; infinity comes last.
std::vector<CriticalPoint> critical_points(const RationalMap& f);

struct Preimage {
  SpherePoint point;
  int multiplicity = 1;
};

/// The fiber f^-1(v) with multiplicities summing to the degree.
std::vector<Preimage> preimages(const RationalMap& f, const SpherePoint& v);

SpherePoint iterate(const RationalMap& f, SpherePoint x, int n);

/// f o g
RationalMap compose(const RationalMap& f, const RationalMap& g);

/// f^n as explicit coefficients; DegreeBoundError when d^n > bound.
RationalMap compose_self(const RationalMap& f, int n, long bound = kComposeDegreeBound);

/// Largest |N1 D2 - N2 D1| / (|N1 D2| + |N2 D1|) over the probe points.
double map_identity_residual(const RationalMap& f, const RationalMap& g, std::span<const Complex> probes);

}  // namespace fatou
