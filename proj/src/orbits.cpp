#include "fatou/orbits.hpp"

#include <algorithm>
#include <cmath>

#include "fatou/error.hpp"

namespace fatou {

namespace {

// An orbit whose point one period before the revisit is already this close
// to the cycle is accumulating on the cycle rather than landing on it.
constexpr double kAsymptoticRadius = 1e-3;

// Extra periods spent sharpening the cycle of an asymptotic orbit.
constexpr int kRefinePeriods = 200;

void add_unique(std::vector<SpherePoint>& set, const SpherePoint& p, double tol) {
  for (const auto& q : set) {
    if (chordal(p, q) < tol) return;
  }
  set.push_back(p);
}

bool cycle_contains_critical_point(const CycleReport& r, const std::vector<CriticalPoint>& cps, double tol) {
  for (const auto& x : r.cycle) {
    for (const auto& c : cps) {
      if (chordal(x, c.location) < tol) return true;
    }
  }
  return false;
}

bool attracting(CycleClass c) { return c == CycleClass::superattracting || c == CycleClass::attracting; }

}  // namespace

std::string_view to_string(CycleClass c) {
  switch (c) {
    case CycleClass::superattracting: return "superattracting";
    case CycleClass::attracting: return "attracting";
    case CycleClass::indifferent: return "indifferent";
    case CycleClass::repelling: return "repelling";
  }
  return "unknown";
}

std::string_view to_string(Tristate t) {
  switch (t) {
    case Tristate::no: return "false";
    case Tristate::yes: return "true";
    case Tristate::unknown: return "unknown";
  }
  return "unknown";
}

CycleClass classify_multiplier(Complex multiplier) {
  const double m = std::abs(multiplier);
  if (m < kSuperattractingThreshold) return CycleClass::superattracting;
  if (m < 1.0 - kIndifferentBand) return CycleClass::attracting;
  if (m <= 1.0 + kIndifferentBand) return CycleClass::indifferent;
  return CycleClass::repelling;
}

Complex cycle_multiplier(const RationalMap& f, const std::vector<SpherePoint>& cycle) {
  Complex m = 1.0;
  for (const auto& x : cycle) m *= f.chart_derivative(x);
  return m;
}

CycleReport detect_cycle(const RationalMap& f, const SpherePoint& start, const CycleOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("detect_cycle: tol must be positive");
  if (opts.window < 1) throw InvalidArgument("detect_cycle: window must be positive");

  CycleReport report;
  report.start = start;
  std::vector<SpherePoint> pts{start};
  pts.reserve(64);

  for (int n = 1; n <= opts.max_iterations; ++n) {
    const SpherePoint x = f(pts.back());
    const int lo = std::max(0, n - opts.window);
    for (int j = n - 1; j >= lo; --j) {
      if (chordal(x, pts[static_cast<size_t>(j)]) >= opts.tol) continue;

      const int period = n - j;
      report.resolved = true;
      report.preperiod = j;
      report.period = period;
      report.lands_exactly =
          j < period ||
          chordal(pts[static_cast<size_t>(j - period)], pts[static_cast<size_t>(j)]) > kAsymptoticRadius;
      report.orbit.assign(pts.begin(), pts.begin() + j + 1);

      SpherePoint entry = pts[static_cast<size_t>(j)];
      if (!report.lands_exactly) {
        for (int k = 0; k < kRefinePeriods; ++k) {
          const SpherePoint next = iterate(f, entry, period);
          const bool settled = chordal(next, entry) < 1e-15;
          entry = next;
          if (settled) break;
        }
      }
      // An oscillating approach (negative multiplier) can close at a
      // multiple of the true period first.
      for (int k = 1; k < period; ++k) {
        if (period % k == 0 && chordal(iterate(f, entry, k), entry) < opts.tol) {
          report.period = k;
          break;
        }
      }
      report.cycle.clear();
      SpherePoint y = entry;
      for (int k = 0; k < report.period; ++k) {
        report.cycle.push_back(y);
        y = f(y);
      }
      report.multiplier = cycle_multiplier(f, report.cycle);
      report.cycle_class = classify_multiplier(report.multiplier);
      return report;
    }
    pts.push_back(x);
  }
  report.orbit = std::move(pts);
  return report;
}

CriticalPortrait critical_portrait(const RationalMap& f, const CycleOptions& opts) {
  CriticalPortrait portrait;
  portrait.critical_points = critical_points(f);
  const double tol = 10.0 * opts.tol;

  bool any_unresolved = false;
  bool any_asymptotic = false;
  bool any_nonattracting = false;
  bool all_absorbed = true;
  bool all_attracting = true;
  bool all_short_preperiod = true;

  for (const auto& cp : portrait.critical_points) {
    CycleReport r = detect_cycle(f, cp.location, opts);
    if (!r.resolved) {
      any_unresolved = true;
      all_attracting = false;
      all_absorbed = false;
      portrait.orbits.push_back(std::move(r));
      continue;
    }
    if (!r.lands_exactly) any_asymptotic = true;
    if (!attracting(r.cycle_class)) {
      any_nonattracting = true;
      all_attracting = false;
    }
    if (r.preperiod > 1) all_short_preperiod = false;

    std::vector<SpherePoint> forward;
    for (size_t k = 1; k < r.orbit.size(); ++k) add_unique(forward, r.orbit[k], tol);
    for (const auto& c : r.cycle) add_unique(forward, c, tol);
    for (const auto& p : forward) add_unique(portrait.postcritical_set, p, tol);

    if (cycle_contains_critical_point(r, portrait.critical_points, tol)) {
      for (const auto& p : forward) add_unique(portrait.q_set, p, tol);
    } else {
      all_absorbed = false;
    }
    portrait.orbits.push_back(std::move(r));
  }

  if (any_asymptotic) {
    portrait.is_critically_finite = Tristate::no;
  } else if (any_unresolved) {
    portrait.is_critically_finite = Tristate::unknown;
  } else {
    portrait.is_critically_finite = Tristate::yes;
  }

  switch (portrait.is_critically_finite) {
    case Tristate::yes:
      portrait.is_hyperbolic = all_absorbed ? Tristate::yes : Tristate::no;
      portrait.all_postcritical_periodic = all_short_preperiod ? Tristate::yes : Tristate::no;
      break;
    case Tristate::no:
      portrait.is_hyperbolic =
          any_nonattracting ? Tristate::no : (all_attracting ? Tristate::yes : Tristate::unknown);
      portrait.all_postcritical_periodic = Tristate::no;
      break;
    case Tristate::unknown:
      portrait.is_hyperbolic = any_nonattracting ? Tristate::no : Tristate::unknown;
      portrait.all_postcritical_periodic = Tristate::unknown;
      break;
  }
  return portrait;
}

namespace {

// Guarded Newton on f^p(z) - z evaluated pointwise, which is far better
// conditioned than the expanded coefficients of f^p.
Complex polish_periodic(const RationalMap& f, int period, Complex z) {
  const Polynomial w = f.wronskian();
  auto residual = [&](Complex x, Complex* deriv) -> std::optional<Complex> {
    Complex d = 1.0;
    Complex y = x;
    for (int k = 0; k < period; ++k) {
      if (!(std::abs(y) < 1e6)) return std::nullopt;
      const Complex q = f.den()(y);
      if (q == Complex(0.0)) return std::nullopt;
      d *= w(y) / (q * q);
      y = f.num()(y) / q;
    }
    if (deriv) *deriv = d - 1.0;
    return y - x;
  };
  Complex deriv;
  auto r = residual(z, &deriv);
  if (!r) return z;
  for (int it = 0; it < 6 && std::abs(*r) > 0.0; ++it) {
    if (deriv == Complex(0.0)) break;
    const Complex next = z - *r / deriv;
    Complex next_deriv;
    auto nr = residual(next, &next_deriv);
    if (!nr || !(std::abs(*nr) < std::abs(*r))) break;
    z = next;
    r = nr;
    deriv = next_deriv;
  }
  return z;
}

// h(z)/h'(z) for h = N_p - z D_p, where f^p = N_p / D_p, evaluated by
// iterating the homogeneous pair (X, Y) = (N_k(z), D_k(z)) together with its
// z-derivative.  Each step drops a common scalar, which the ratio ignores.
class PeriodicRatio {
 public:
  PeriodicRatio(const RationalMap& f, int period) : f_(f), period_(period) {}

  Complex operator()(Complex z) const {
    Complex x = z, y = 1.0, dx = 1.0, dy = 0.0;
    const double d = f_.degree();
    for (int k = 0; k < period_; ++k) {
      Complex nx, ny, ndx, ndy;
      if (std::abs(y) >= std::abs(x)) {
        const Complex u = x / y;
        auto [p, dp] = f_.num().eval_with_derivative(u);
        auto [q, dq] = f_.den().eval_with_derivative(u);
        nx = y * p;
        ny = y * q;
        ndx = dp * dx + (d * p - u * dp) * dy;
        ndy = dq * dx + (d * q - u * dq) * dy;
      } else {
        const Complex u = y / x;
        auto [p, dp] = f_.num_at_infinity().eval_with_derivative(u);
        auto [q, dq] = f_.den_at_infinity().eval_with_derivative(u);
        nx = x * p;
        ny = x * q;
        ndx = (d * p - u * dp) * dx + dp * dy;
        ndy = (d * q - u * dq) * dx + dq * dy;
      }
      const double s = std::max(std::abs(nx), std::abs(ny));
      if (!(s > 0.0)) return 0.0;
      x = nx / s;
      y = ny / s;
      dx = ndx / s;
      dy = ndy / s;
    }
    const Complex h = x - z * y;
    if (h == Complex(0.0)) return 0.0;
    return h / (dx - y - z * dy);
  }

 private:
  const RationalMap& f_;
  int period_;
};

}  // namespace

std::vector<PeriodicPoint> periodic_points(const RationalMap& f, int period, long degree_bound) {
  if (period < 1) throw InvalidArgument("periodic_points: period must be at least 1");
  const RationalMap fp = compose_self(f, period, degree_bound);
  const int total = fp.degree() + 1;
  const Polynomial h = fp.num() - Polynomial({0.0, 1.0}) * fp.den();

  std::vector<PeriodicPoint> out;
  int at_infinity = total - std::max(h.degree(), 0);
  if (h.degree() >= 1) {
    // Coefficient roots seed a pointwise Aberth pass; the expanded
    // coefficients of f^p alone lose accuracy in root clusters.
    std::vector<Complex> approx = aberth_refine(poly_root_approximations(h), PeriodicRatio(f, period));
    for (const auto& r : cluster_roots(approx, RootOptions{}.tol)) {
      const Complex z = r.multiplicity == 1 ? polish_periodic(f, period, r.value) : r.value;
      const SpherePoint p(z);
      if (near(p, SpherePoint::infinity(), 1e-12)) {
        at_infinity += r.multiplicity;
        continue;
      }
      out.push_back({p, r.multiplicity, period});
    }
  }
  if (at_infinity > 0) out.push_back({SpherePoint::infinity(), at_infinity, period});

  for (auto& pp : out) {
    for (int k = 1; k < period; ++k) {
      if (period % k != 0) continue;
      if (chordal(iterate(f, pp.point, k), pp.point) < 1e-7) {
        pp.minimal_period = k;
        break;
      }
    }
  }
  return out;
}

}  // namespace fatou
