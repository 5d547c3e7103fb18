#include "fatou/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "fatou/error.hpp"

namespace fatou {

namespace {

// Relative distance below which a point counts as lying on a curve.
constexpr double kOnCurveTolerance = 1e-12;

// Values the base curve must keep away from: finite critical values, where
// strands collide, and f(infinity), where a strand escapes the plane.
std::vector<Complex> forbidden_values(const RationalMap& f) {
  std::vector<Complex> out;
  for (const auto& cp : critical_points(f)) {
    const SpherePoint v = f(cp.location);
    if (!v.is_infinite()) out.push_back(v.finite_value());
  }
  const SpherePoint at_inf = f(SpherePoint::infinity());
  if (!at_inf.is_infinite()) out.push_back(at_inf.finite_value());
  return out;
}

class StrandTracker {
 public:
  StrandTracker(const RationalMap& f, const LiftOptions& opts)
      : f_(f), w_(f.wronskian()), opts_(opts), forbidden_(forbidden_values(f)) {}

  std::vector<Complex> fiber(Complex v) const {
    for (Complex c : forbidden_) {
      if (std::abs(v - c) <= opts_.eps) {
        throw InvalidArgument("curve point (" + std::to_string(v.real()) + ", " + std::to_string(v.imag()) +
                              ") is within " + std::to_string(opts_.eps) + " of the critical value (" +
                              std::to_string(c.real()) + ", " + std::to_string(c.imag()) + ")");
      }
    }
    std::vector<Complex> out;
    for (const auto& p : preimages(f_, SpherePoint(v))) {
      if (p.multiplicity != 1 || p.point.is_infinite()) {
        throw InvalidArgument("curve point (" + std::to_string(v.real()) + ", " + std::to_string(v.imag()) +
                              ") has a degenerate fiber");
      }
      out.push_back(p.point.finite_value());
    }
    return out;
  }

  void check_vertex(Complex v) const { (void)fiber(v); }

  /// Indices into fib_b reached by continuing the points `from` (a fiber
  /// over a) along the segment from a to b.
  std::vector<int> carry(const std::vector<Complex>& from, Complex a, Complex b, const std::vector<Complex>& fib_b,
                         int level) const {
    if (auto idx = match(from, a, b, fib_b)) return *idx;
    if (level >= opts_.max_subdivisions) {
      throw ConvergenceError("strand matching stayed ambiguous near (" + std::to_string(a.real()) + ", " +
                             std::to_string(a.imag()) + ") after " + std::to_string(level) + " subdivisions");
    }
    const Complex mid = 0.5 * (a + b);
    const std::vector<Complex> fib_m = fiber(mid);
    const std::vector<int> first = carry(from, a, mid, fib_m, level + 1);
    std::vector<Complex> at_mid;
    for (int j : first) at_mid.push_back(fib_m[static_cast<size_t>(j)]);
    return carry(at_mid, mid, b, fib_b, level + 1);
  }

 private:
  std::optional<std::vector<int>> match(const std::vector<Complex>& from, Complex a, Complex b,
                                        const std::vector<Complex>& fib_b) const {
    std::vector<int> out;
    std::vector<bool> used(fib_b.size(), false);
    for (Complex x : from) {
      // Tangent predictor: x moves by (b - a) / f'(x) to first order.
      const Complex q = f_.den()(x);
      const Complex deriv = w_(x) / (q * q);
      const Complex pred = deriv == Complex(0.0) ? x : x + (b - a) / deriv;
      double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
      int best = -1;
      for (size_t j = 0; j < fib_b.size(); ++j) {
        const double d = std::abs(fib_b[j] - pred);
        if (d < d1) {
          d2 = d1;
          d1 = d;
          best = static_cast<int>(j);
        } else if (d < d2) {
          d2 = d;
        }
      }
      if (best < 0 || !(d1 < opts_.ratio * d2) || used[static_cast<size_t>(best)]) return std::nullopt;
      used[static_cast<size_t>(best)] = true;
      out.push_back(best);
    }
    return out;
  }

  const RationalMap& f_;
  Polynomial w_;
  const LiftOptions& opts_;
  std::vector<Complex> forbidden_;
};

struct Tracks {
  /// positions[s][k]: strand s (starting at fiber point s over vertex 0)
  /// above vertex k.
  std::vector<std::vector<Complex>> positions;
  std::vector<int> permutation;
};

Tracks track(const RationalMap& f, const PolyCurve& loop, const LiftOptions& opts) {
  const auto& v = loop.vertices;
  if (v.size() < 3) throw InvalidArgument("curve needs at least 3 vertices");
  if (!(opts.eps > 0.0) || !(opts.ratio > 0.0 && opts.ratio < 1.0)) {
    throw InvalidArgument("lift tolerances must be positive and the ratio below 1");
  }
  const StrandTracker tracker(f, opts);
  for (Complex x : v) tracker.check_vertex(x);

  const std::vector<Complex> fib0 = tracker.fiber(v[0]);
  const size_t d = fib0.size();
  Tracks t;
  t.positions.assign(d, {});
  for (size_t s = 0; s < d; ++s) {
    t.positions[s].reserve(v.size());
    t.positions[s].push_back(fib0[s]);
  }
  std::vector<Complex> cur = fib0;
  for (size_t k = 1; k <= v.size(); ++k) {
    const bool closing = k == v.size();
    const Complex b = closing ? v[0] : v[k];
    const std::vector<Complex> fib = closing ? fib0 : tracker.fiber(b);
    const std::vector<int> idx = tracker.carry(cur, v[k - 1], b, fib, 0);
    for (size_t s = 0; s < d; ++s) cur[s] = fib[static_cast<size_t>(idx[s])];
    if (closing) {
      t.permutation = idx;
    } else {
      for (size_t s = 0; s < d; ++s) t.positions[s].push_back(cur[s]);
    }
  }
  return t;
}

}  // namespace

std::vector<int> monodromy(const RationalMap& f, const PolyCurve& loop, const LiftOptions& opts) {
  return track(f, loop, opts).permutation;
}

int sign_of(const PolyCurve& curve, Complex omega) {
  if (distance_to_curve(curve, omega) <= kOnCurveTolerance * std::max(1.0, std::abs(omega))) {
    throw InvalidArgument("reference point lies on the curve");
  }
  const int w = winding_number(curve, omega);
  const bool ccw = signed_area2(curve) > 0.0;
  if (std::abs(w) > 1 || (ccw && w < 0) || (!ccw && w > 0)) {
    throw InvalidArgument("curve is not a Jordan curve (winding number " + std::to_string(w) + ")");
  }
  const bool left = ccw ? w == 1 : w == 0;
  return left ? -1 : 1;
}

LiftSet lift_curve(const RationalMap& f, const PolyCurve& curve, Complex omega, const LiftOptions& opts) {
  const Tracks t = track(f, curve, opts);
  LiftSet out;
  out.base = curve;
  out.monodromy = t.permutation;
  std::vector<bool> seen(t.permutation.size(), false);
  for (size_t start = 0; start < t.permutation.size(); ++start) {
    if (seen[start]) continue;
    Lift lift;
    lift.degree = 0;
    size_t s = start;
    do {
      seen[s] = true;
      lift.curve.vertices.insert(lift.curve.vertices.end(), t.positions[s].begin(), t.positions[s].end());
      ++lift.degree;
      s = static_cast<size_t>(t.permutation[s]);
    } while (s != start);
    lift.sign = sign_of(lift.curve, omega);
    out.lifts.push_back(std::move(lift));
  }
  return out;
}

std::vector<size_t> outermost_lifts(const LiftSet& set, Complex omega) {
  std::vector<size_t> out;
  for (size_t i = 0; i < set.lifts.size(); ++i) {
    const PolyCurve& mine = set.lifts[i].curve;
    bool outer = true;
    for (size_t j = 0; j < set.lifts.size() && outer; ++j) {
      if (j == i) continue;
      const PolyCurve& other = set.lifts[j].curve;
      if (distance_to_curve(other, omega) <= kOnCurveTolerance * std::max(1.0, std::abs(omega))) {
        throw InvalidArgument("reference point lies on a lift");
      }
      // Any vertex of this lift safely off the other one will do.
      const Complex* probe = nullptr;
      for (const Complex& v : mine.vertices) {
        if (distance_to_curve(other, v) > kOnCurveTolerance * std::max(1.0, std::abs(v))) {
          probe = &v;
          break;
        }
      }
      if (!probe) throw ConvergenceError("lift lies on another lift; outermost test is degenerate");
      if (winding_number(other, *probe) != winding_number(other, omega)) outer = false;
    }
    if (outer) out.push_back(i);
  }
  return out;
}

size_t farthest_from_reference(const std::vector<const Lift*>& candidates, Complex omega) {
  size_t best = 0;
  double best_dist = -1.0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex v : candidates[i]->curve.vertices) d = std::min(d, std::abs(v - omega));
    if (d > best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

int SignSequence::changes() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const SignStep& s) { return s.sign_change; }));
}

SignSequence sign_change_sequence(const RationalMap& f, const PolyCurve& start, Complex omega, int n,
                                  const LiftSelector& selector, const LiftOptions& opts) {
  if (n < 0) throw InvalidArgument("sign sequence length must be non-negative");
  SignSequence seq;
  seq.steps.push_back({start, sign_of(start, omega), 1, true, false});
  for (int k = 0; k < n; ++k) {
    const LiftSet set = lift_curve(f, seq.steps.back().curve, omega, opts);
    const std::vector<size_t> outer = outermost_lifts(set, omega);
    if (outer.empty()) throw ConvergenceError("no outermost lift found");
    std::vector<const Lift*> candidates;
    for (size_t i : outer) candidates.push_back(&set.lifts[i]);
    const size_t pick = selector(candidates, omega);
    if (pick >= candidates.size()) throw InvalidArgument("lift selector returned an out-of-range index");
    const Lift& chosen = *candidates[pick];
    const int prev = seq.steps.back().sign;
    seq.steps.push_back({chosen.curve, chosen.sign, chosen.degree, true, chosen.sign != prev});
  }
  return seq;
}

}  // namespace fatou
