#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fatou/rational_map.hpp"

namespace fatou {

enum class CycleClass { superattracting, attracting, indifferent, repelling };

std::string_view to_string(CycleClass c);

/// Three-valued answer for properties decided from finitely many iterates.
enum class Tristate { no, yes, unknown };

std::string_view to_string(Tristate t);

/// Multiplier modulus below which a cycle counts as superattracting.
inline constexpr double kSuperattractingThreshold = 1e-8;
/// Half-width of the band around |multiplier| = 1 classed as indifferent.
inline constexpr double kIndifferentBand = 1e-6;

struct CycleReport {
  SpherePoint start;
  bool resolved = false;
  int preperiod = 0;
  int period = 0;
  /// cycle[0] is where the orbit enters the cycle; cycle[i+1] = f(cycle[i]).
  std::vector<SpherePoint> cycle;
  Complex multiplier = 0.0;
  CycleClass cycle_class = CycleClass::repelling;
  /// True when the orbit hits the cycle after finitely many steps rather
  /// than only accumulating on it.
  bool lands_exactly = false;
  /// The orbit start, f(start), ... up to and including the first cycle point.
  std::vector<SpherePoint> orbit;
};

struct CycleOptions {
  double tol = 1e-9;
  int max_iterations = 2000;
  /// Number of most recent orbit points searched for a revisit.
  int window = 64;
};

/// Follows the orbit of start until a point revisits one of the last
/// `window` points within tol (chordal).  Unresolved orbits come back with
/// resolved == false; they are expected for starts on the Julia set.
CycleReport detect_cycle(const RationalMap& f, const SpherePoint& start, const CycleOptions& opts = {});

/// Multiplier of a cycle: product of chart derivatives along it.
Complex cycle_multiplier(const RationalMap& f, const std::vector<SpherePoint>& cycle);

CycleClass classify_multiplier(Complex multiplier);

struct CriticalPortrait {
  std::vector<CriticalPoint> critical_points;
  std::vector<CycleReport> orbits;
  std::vector<SpherePoint> postcritical_set;
  std::vector<SpherePoint> q_set;
  Tristate is_critically_finite = Tristate::unknown;
  Tristate is_hyperbolic = Tristate::unknown;
  Tristate all_postcritical_periodic = Tristate::unknown;
};

/// Critical points, their orbits, P(f) and Q(f) plus classification flags.
///
/// Hyperbolicity of a critically finite map is decided by whether every
/// critical orbit falls into a cycle that contains a critical point.  For
/// other maps it is "yes" only when every critical orbit converges to an
/// attracting cycle, "no" when one lands on a non-attracting cycle, and
/// "unknown" when an orbit stays unresolved.
CriticalPortrait critical_portrait(const RationalMap& f, const CycleOptions& opts = {});

struct PeriodicPoint {
  SpherePoint point;
  int multiplicity = 1;
  /// Smallest k dividing the requested period with f^k(x) = x.
  int minimal_period = 1;
};

/// Solutions of f^p(z) = z on the sphere, counted with multiplicity
/// (d^p + 1 in total).  Points of smaller period are kept and annotated.
std::vector<PeriodicPoint> periodic_points(const RationalMap& f, int period,
                                           long degree_bound = kComposeDegreeBound);

}  // namespace fatou
