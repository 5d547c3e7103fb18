#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fatou/catalog.hpp"
#include "fatou/error.hpp"
#include "fatou/orbits.hpp"
#include "support.hpp"

using namespace fatou;
using fatou::testing::Rng;

namespace {

std::vector<Complex> probes(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(testing::random_in_box(rng, 2.0));
  return out;
}

// (d-1) z^d - d z^(d-1) + 1, conjugated by z -> (z-1)/z and post-composed
// with (1-d)(z-1)/z, written out pointwise.
Complex family_pointwise(int d, Complex z) {
  const Complex m = (z - 1.0) / z;
  const Complex p = double(d - 1) * std::pow(m, d) - double(d) * std::pow(m, d - 1) + 1.0;
  return double(1 - d) * (p - 1.0) / p;
}

}  // namespace

TEST_CASE("family agrees with its pointwise definition") {
  for (int d = 2; d <= 6; ++d) {
    const RationalMap f = catalog::pseudo_basilica(d);
    CHECK(f.degree() == d);
    for (Complex z : probes(20, 100 + d)) {
      const Complex expect = family_pointwise(d, z);
      CHECK(std::abs(f(z) - expect) <= 1e-9 * (1.0 + std::abs(expect)));
    }
  }
  CHECK_THROWS_AS(catalog::pseudo_basilica(1), InvalidArgument);
}

TEST_CASE("written-out cubic and quartic are family members") {
  const auto pts = probes(20, 7);
  CHECK(map_identity_residual(catalog::pseudo_basilica(3), catalog::displayed_cubic(), pts) < 1e-9);
  CHECK(map_identity_residual(catalog::pseudo_basilica(4), catalog::displayed_quartic(), pts) < 1e-9);
  CHECK(map_identity_residual(catalog::pseudo_basilica(3), catalog::displayed_quartic(), pts) > 1e-3);
  // degree two is conjugate-free: it is z^2 - 1 on the nose
  const RationalMap basilica = normalize(Polynomial({-1.0, 0.0, 1.0}), Polynomial::constant(1.0));
  CHECK(map_identity_residual(catalog::pseudo_basilica(2), basilica, pts) < 1e-12);
}

TEST_CASE("family portraits: 1 -> 0 -> 1-d -> 0 with infinity fixed") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const RationalMap f = catalog::pseudo_basilica(d);
    const auto p = critical_portrait(f);
    for (const auto& cp : p.critical_points) {
      if (cp.location.is_infinite()) {
        CHECK(cp.local_degree == 2);
      } else if (chordal(cp.location, SpherePoint(0.0)) < 1e-9) {
        CHECK(cp.local_degree == d);
      } else {
        CHECK(chordal(cp.location, SpherePoint(1.0)) < 1e-9);
        CHECK(cp.local_degree == d - 1);
      }
    }
    CHECK(chordal(f(SpherePoint(1.0)), SpherePoint(0.0)) < 1e-12);
    CHECK(chordal(f(SpherePoint(0.0)), SpherePoint(double(1 - d))) < 1e-12);
    CHECK(chordal(f(SpherePoint(double(1 - d))), SpherePoint(0.0)) < 1e-12);
    CHECK(f(SpherePoint::infinity()).is_infinite());
    CHECK(p.postcritical_set.size() == 3);
    CHECK(p.is_critically_finite == Tristate::yes);
    CHECK(p.is_hyperbolic == Tristate::yes);
    CHECK(p.all_postcritical_periodic == Tristate::yes);
  }
}

TEST_CASE("rabbit parameters") {
  const auto roots = catalog::pseudo_rabbit_roots(3);
  const Complex target(1.34781, 1.02885);
  const auto best = std::min_element(roots.begin(), roots.end(), [&](Complex a, Complex b) {
    return std::abs(a - target) < std::abs(b - target);
  });
  REQUIRE(best != roots.end());
  CHECK(std::abs(*best - target) < 1e-3);
  // conjugate parameter too, since the family has real coefficients
  const bool has_conj = std::any_of(roots.begin(), roots.end(),
                                    [&](Complex r) { return std::abs(r - std::conj(target)) < 1e-3; });
  CHECK(has_conj);

  for (int d = 3; d <= 4; ++d) {
    for (Complex r : catalog::pseudo_rabbit_roots(d)) {
      CAPTURE(r);
      const RationalMap f = catalog::pseudo_rabbit(d, r);
      const SpherePoint zero(0.0);
      CHECK(chordal(f(zero), zero) > 1e-6);
      CHECK(chordal(iterate(f, zero, 3), zero) < 1e-7);
    }
  }
  // a real rabbit map is the scaled family member
  const RationalMap f = catalog::pseudo_rabbit(3, 2.0);
  CHECK(std::abs(f(Complex(0.3)) - catalog::pseudo_basilica(3)(Complex(0.3))) < 1e-12);
}

TEST_CASE("pinch parameters solve the three conditions") {
  const auto s = catalog::solve_pinch_params();
  CHECK(s.first_derivative_at_zero < 1e-9);
  CHECK(s.second_derivative_at_zero < 1e-9);
  CHECK(s.return_residual < 1e-9);
  // denominator proportional to 1.5 z - 1
  const Complex ratio = s.denominator[1] / 1.5;
  CHECK(std::abs(s.denominator[0] + ratio) < 1e-9 * std::abs(ratio));
  CHECK(std::abs(s.a - 1.5) < 1e-9);
  CHECK(std::abs(s.b - 1.0) < 1e-9);
  CHECK(map_identity_residual(s.map, catalog::displayed_cubic(), probes(20, 3)) < 1e-9);
  // g(0) must be the simple zero -2 of the numerator
  CHECK(std::abs(s.map(Complex(0.0)) + 2.0) < 1e-9);
}

TEST_CASE("lookup by name") {
  CHECK(catalog::lookup("paper-g").degree() == 3);
  CHECK(catalog::lookup("paper-degree4").degree() == 4);
  CHECK(catalog::lookup("pseudo-basilica:5").degree() == 5);
  CHECK(catalog::lookup("pseudo-rabbit:3:6").degree() == 3);
  for (const auto& n : catalog::names()) CHECK_NOTHROW(catalog::lookup(n));
  CHECK_THROWS_AS(catalog::lookup("nope"), InvalidArgument);
  CHECK_THROWS_AS(catalog::lookup("pseudo-basilica:x"), InvalidArgument);
  CHECK_THROWS_AS(catalog::lookup("pseudo-rabbit:3:99"), InvalidArgument);
}
