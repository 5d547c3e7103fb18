#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fatou/rational_map.hpp"

namespace fatou {

/// Rational angle num/den in [0, 1), kept in lowest terms.
class RayAngle {
 public:
  RayAngle(std::int64_t num, std::int64_t den);

  /// Parses "a/b" (or a bare "0"); decimal notation is rejected.
  static RayAngle parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// m t mod 1, exactly.
  RayAngle times(int m) const;
  /// 1 - t mod 1
  RayAngle reflected() const;

  std::string to_string() const;

  friend bool operator==(const RayAngle& a, const RayAngle& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

struct RayOptions {
  int depth = 120;
  double r0 = 100.0;
  double landing_tol = 1e-6;
  /// Number of final shells whose samples must fit within landing_tol.
  int window = 8;
  /// Intermediate potentials per shell on the first attempt.
  int subsamples = 8;
  /// Times the subsample count may double when branch matching is ambiguous.
  int max_refinements = 6;
};

struct RayTrace {
  RayAngle angle{0, 1};
  /// One point per shell, at potentials r0^(1/m^k) for k = 0..depth.
  std::vector<Complex> samples;
  /// Every intermediate point, in order of decreasing potential.
  std::vector<Complex> path;
  Complex landing;
  bool landed = false;
  /// Chordal diameter of the samples in the last `window` shells.
  double residual = 0.0;
};

/// Traces the ray of angle t in the basin of the superattracting fixed
/// point `basin`.
///
/// The Böttcher coordinate is normalized by phi(z) ~ alpha z at the basin
/// (after moving it to infinity by z -> 1/(z - basin) when finite, which
/// also flips angles so that t still means arg(z - basin) = 2 pi t), with
/// alpha^(m-1) equal to the leading coefficient ratio and alpha the root of
/// smallest argument, so angle 0 leaves along the positive real direction.
/// Samples are produced by pulling back the rays of the whole forward orbit
/// of t together, shell by shell, always taking the preimage nearest the
/// previous point on the same ray.
///
/// Throws InvalidArgument when `basin` is not a superattracting fixed
/// point and ConvergenceError when branch matching stays ambiguous after
/// every refinement.
RayTrace trace_ray(const RationalMap& f, const SpherePoint& basin, const RayAngle& t, const RayOptions& opts = {});

/// Traces of every angle in the forward orbit of t (t first, then m t, ...).
std::vector<RayTrace> trace_ray_orbit(const RationalMap& f, const SpherePoint& basin, const RayAngle& t,
                                      const RayOptions& opts = {});

/// Local degree of f at a fixed point, or 1 when it is not critical.
int basin_local_degree(const RationalMap& f, const SpherePoint& basin);

/// Largest distance between f(sample k+1 of `ray`) and sample k of `image`,
/// where image traces the angle m t.
double functoriality_residual(const RationalMap& f, const RayTrace& ray, const RayTrace& image);

/// Whether the two rays land at the same point (chordal distance < tol).
/// Throws ConvergenceError when either ray has not landed.
bool coland(const RationalMap& f, const SpherePoint& basin, const RayAngle& t1, const RayAngle& t2,
            double tol = 1e-6, const RayOptions& opts = {});

/// Whether the closed curve made of the rays t1 and t2, their common
/// landing point and the basin point separates a from b.
///
/// Throws InvalidArgument when the rays do not co-land or when a or b lies
/// within tol of the curve.
bool separation_test(const RationalMap& f, const SpherePoint& basin, const RayAngle& t1, const RayAngle& t2,
                     Complex a, Complex b, const RayOptions& opts = {}, double tol = 1e-9);

}  // namespace fatou
