#pragma once

#include <functional>
#include <vector>

#include "fatou/curves.hpp"
#include "fatou/rational_map.hpp"

namespace fatou {

struct Lift {
  PolyCurve curve;
  /// Covering degree of f restricted to the lift.
  int degree = 1;
  /// +1 when the reference point lies outside (to the right of) the lift.
  int sign = 1;
};

struct LiftSet {
  PolyCurve base;
  std::vector<Lift> lifts;
  /// Strand k of the fiber over the first base vertex ends at strand
  /// monodromy[k] after one traversal.  The fiber is ordered by preimages().
  std::vector<int> monodromy;
};

struct LiftOptions {
  /// Vertices closer than this to a critical value are rejected.
  double eps = 1e-6;
  /// Nearest fiber point must be closer than ratio * second nearest.
  double ratio = 0.5;
  /// Bisections allowed per base edge when matching is ambiguous.
  int max_subdivisions = 10;
};

/// Continues the fiber of f around the closed polyline and returns the
/// permutation of fiber points it induces.
std::vector<int> monodromy(const RationalMap& f, const PolyCurve& loop, const LiftOptions& opts = {});

/// All lifts of the curve: one per cycle of the monodromy, with degree the
/// cycle length, oriented so that f preserves orientation, and signed
/// relative to the reference point omega.
///
/// Throws InvalidArgument when a vertex is within eps of a critical value or
/// of f(infinity), or when omega lies on a lift, and ConvergenceError when
/// strand matching stays ambiguous after subdivision.
LiftSet lift_curve(const RationalMap& f, const PolyCurve& curve, Complex omega, const LiftOptions& opts = {});

/// -1 when omega lies to the left of the curve (inside a counterclockwise
/// curve, outside a clockwise one), +1 otherwise.  Throws InvalidArgument
/// when omega is on the curve or the winding number exceeds 1 in size.
int sign_of(const PolyCurve& curve, Complex omega);

/// Indices of the lifts not separated from omega by any other lift.
std::vector<size_t> outermost_lifts(const LiftSet& set, Complex omega);

/// Picks one of the given outermost lifts.
using LiftSelector = std::function<size_t(const std::vector<const Lift*>& candidates, Complex omega)>;

/// The outermost lift whose closest vertex is farthest from omega.
size_t farthest_from_reference(const std::vector<const Lift*>& candidates, Complex omega);

struct SignStep {
  PolyCurve curve;
  int sign = 1;
  int degree = 1;
  bool outermost = true;
  /// The sign differs from the previous step's.
  bool sign_change = false;
};

struct SignSequence {
  std::vector<SignStep> steps;
  int changes() const;
};

/// Step 0 is the starting curve; each further step lifts the previous curve,
/// keeps the outermost lifts and follows the one chosen by the selector.
SignSequence sign_change_sequence(const RationalMap& f, const PolyCurve& start, Complex omega, int n = 8,
                                  const LiftSelector& selector = farthest_from_reference,
                                  const LiftOptions& opts = {});

}  // namespace fatou
