#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fatou/catalog.hpp"
#include "fatou/error.hpp"
#include "fatou/orbits.hpp"
#include "support.hpp"

using namespace fatou;

namespace {

const RationalMap g = catalog::lookup("paper-g");

bool contains(const std::vector<SpherePoint>& set, const SpherePoint& p, double tol = 1e-9) {
  return std::any_of(set.begin(), set.end(), [&](const SpherePoint& q) { return chordal(p, q) < tol; });
}

int total_multiplicity(const std::vector<PeriodicPoint>& pts) {
  int s = 0;
  for (const auto& p : pts) s += p.multiplicity;
  return s;
}

// Real zeros of x -> g(g(x)) - x by bisection on a fine grid, independent
// of the root finder.  Sign changes across poles are discarded by checking
// the residual at the bracketed point.
std::vector<double> real_period_two_by_bisection() {
  auto phi = [](double x) { return g(g(Complex(x))).real() - x; };
  std::vector<double> roots;
  const int n = 200000;
  const double lo = -10.0, hi = 10.0;
  double a = lo, fa = phi(a);
  for (int i = 1; i <= n; ++i) {
    const double b = lo + (hi - lo) * i / n;
    const double fb = phi(b);
    if (std::isfinite(fa) && std::isfinite(fb) && (fa < 0) != (fb < 0)) {
      double l = a, r = b, fl = fa;
      for (int k = 0; k < 200; ++k) {
        const double m = 0.5 * (l + r);
        const double fm = phi(m);
        if ((fm < 0) == (fl < 0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      const double x = 0.5 * (l + r);
      if (std::abs(phi(x)) < 1e-6) roots.push_back(x);
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace

TEST_CASE("cycle detection") {
  const auto r = detect_cycle(g, SpherePoint(1.0));
  REQUIRE(r.resolved);
  CHECK(r.preperiod == 1);
  CHECK(r.period == 2);
  CHECK(r.lands_exactly);
  CHECK(std::abs(r.multiplier) < kSuperattractingThreshold);
  CHECK(r.cycle_class == CycleClass::superattracting);
  CHECK(chordal(r.cycle[0], SpherePoint(0.0)) < 1e-9);
  CHECK(chordal(r.cycle[1], SpherePoint(-2.0)) < 1e-9);

  // z^2 - 0.5 has an attracting fixed point that 0 only approaches
  const RationalMap q = normalize(Polynomial({-0.5, 0.0, 1.0}), Polynomial::constant(1.0));
  const auto s = detect_cycle(q, SpherePoint(0.0));
  REQUIRE(s.resolved);
  CHECK(s.period == 1);
  CHECK_FALSE(s.lands_exactly);
  CHECK(s.cycle_class == CycleClass::attracting);
  CHECK(std::abs(s.cycle[0].finite_value() - (1.0 - std::sqrt(3.0)) / 2.0) < 1e-8);

  // a repelling fixed point is found at once
  const auto t = detect_cycle(q, SpherePoint((1.0 + std::sqrt(3.0)) / 2.0));
  CHECK(t.resolved);
  CHECK(t.cycle_class == CycleClass::repelling);
}

TEST_CASE("multiplier classification") {
  CHECK(classify_multiplier(0.0) == CycleClass::superattracting);
  CHECK(classify_multiplier(0.5) == CycleClass::attracting);
  CHECK(classify_multiplier(Complex(0.0, 1.0)) == CycleClass::indifferent);
  CHECK(classify_multiplier(2.0) == CycleClass::repelling);
}

TEST_CASE("portrait of the cubic") {
  const auto p = critical_portrait(g);
  CHECK(p.critical_points.size() == 3);
  CHECK(p.postcritical_set.size() == 3);
  CHECK(contains(p.postcritical_set, SpherePoint::infinity()));
  CHECK(contains(p.postcritical_set, SpherePoint(0.0)));
  CHECK(contains(p.postcritical_set, SpherePoint(-2.0)));
  CHECK(p.is_critically_finite == Tristate::yes);
  CHECK(p.is_hyperbolic == Tristate::yes);
  CHECK(p.all_postcritical_periodic == Tristate::yes);
}

TEST_CASE("portrait flags on maps outside the hyperbolic critically finite class") {
  // z^2 + i: 0 -> i -> -1+i -> -i -> -1+i, preperiodic onto a repelling cycle
  const RationalMap f = normalize(Polynomial({Complex(0.0, 1.0), 0.0, 1.0}), Polynomial::constant(1.0));
  const auto p = critical_portrait(f);
  CHECK(p.is_critically_finite == Tristate::yes);
  CHECK(p.is_hyperbolic == Tristate::no);
  CHECK(p.all_postcritical_periodic == Tristate::no);

  // z^2 - 0.5: infinite postcritical orbit converging to an attracting point
  const RationalMap q = normalize(Polynomial({-0.5, 0.0, 1.0}), Polynomial::constant(1.0));
  const auto r = critical_portrait(q);
  CHECK(r.is_critically_finite == Tristate::no);
  CHECK(r.is_hyperbolic == Tristate::yes);
}

TEST_CASE("periodic points of period dividing two") {
  const auto pts = periodic_points(g, 2);
  CHECK(total_multiplicity(pts) == 10);
  int at_infinity = 0;
  for (const auto& p : pts) {
    if (p.point.is_infinite()) {
      ++at_infinity;
      continue;
    }
    CHECK(std::abs(p.point.finite_value().imag()) < 1e-8);
    CHECK(chordal(iterate(g, p.point, 2), p.point) < 1e-9);
  }
  CHECK(at_infinity == 1);

  // every finite one agrees with the bisection oracle, and vice versa
  const auto oracle = real_period_two_by_bisection();
  CHECK(oracle.size() == 9);
  for (double x : oracle) {
    const bool found = std::any_of(pts.begin(), pts.end(),
                                   [&](const PeriodicPoint& p) { return chordal(p.point, SpherePoint(x)) < 1e-9; });
    CHECK_MESSAGE(found, "missing real period-two point " << x);
  }
  for (double x : {0.0, -2.0, 2.0}) {
    const bool found = std::any_of(pts.begin(), pts.end(),
                                   [&](const PeriodicPoint& p) { return chordal(p.point, SpherePoint(x)) < 1e-9; });
    CHECK(found);
  }
  // minimal periods: fixed points 2, (-1 +- sqrt 17)/4 and infinity
  int fixed = 0;
  for (const auto& p : pts) fixed += p.minimal_period == 1 ? p.multiplicity : 0;
  CHECK(fixed == 4);
}

TEST_CASE("periodic point counts d^p + 1 across the catalog") {
  for (const auto& name : catalog::names()) {
    const RationalMap f = catalog::lookup(name);
    long dp = f.degree();
    for (int p = 1; dp <= 81; ++p, dp *= f.degree()) {
      CAPTURE(name);
      CAPTURE(p);
      const auto pts = periodic_points(f, p);
      CHECK(total_multiplicity(pts) == dp + 1);
      for (const auto& x : pts) {
        if (x.multiplicity == 1) CHECK(chordal(iterate(f, x.point, p), x.point) < 1e-6);
      }
    }
  }
}

TEST_CASE("periodic points reject bad arguments") {
  CHECK_THROWS_AS(periodic_points(g, 0), InvalidArgument);
  CHECK_THROWS_AS(periodic_points(g, 9), DegreeBoundError);
}
