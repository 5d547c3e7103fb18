#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fatou/error.hpp"
#include "fatou/rational_map.hpp"
#include "support.hpp"

using namespace fatou;
using fatou::testing::Rng;

namespace {

const RationalMap g = normalize(Polynomial({2.0, -3.0, 0.0, 1.0}), Polynomial({-1.0, 1.5}));

int local_degree_sum(const std::vector<CriticalPoint>& cps) {
  int s = 0;
  for (const auto& c : cps) s += c.local_degree - 1;
  return s;
}

}  // namespace

TEST_CASE("normalize cancels common factors and checks the degree") {
  // (z-1)(z+2) / ((z-1) z^2)  ->  (z+2) / z^2
  const Polynomial n = Polynomial::linear_factor(1.0) * Polynomial::linear_factor(-2.0);
  const Polynomial d = Polynomial::linear_factor(1.0) * Polynomial::monomial(2);
  const RationalMap f = normalize(n, d);
  CHECK(f.degree() == 2);
  CHECK(f.den().degree() == 2);
  CHECK(std::abs(f(Complex(0.5)) - Complex(10.0)) < 1e-12);

  CHECK_THROWS_AS(normalize(Polynomial({1.0, 1.0}), Polynomial({2.0})), InvalidArgument);
  CHECK_THROWS_AS(normalize(Polynomial({1.0, 0.0, 1.0}), Polynomial()), InvalidArgument);
  // (z^2 - 1)/(z - 1) has degree one after cancelling
  CHECK_THROWS_AS(normalize(Polynomial({-1.0, 0.0, 1.0}), Polynomial({-1.0, 1.0})), InvalidArgument);
  CHECK(coprimality_measure(Polynomial({-1.0, 0.0, 1.0}), Polynomial({-1.0, 1.0})) < 1e-14);
  CHECK(coprimality_measure(Polynomial({1.0, 0.0, 1.0}), Polynomial({-1.0, 1.0})) > 0.1);
}

TEST_CASE("evaluation on the sphere") {
  CHECK(g(SpherePoint::infinity()).is_infinite());
  CHECK(std::abs(g(Complex(0.0)) + 2.0) < 1e-15);
  CHECK(g(SpherePoint(Complex(2.0 / 3.0))).is_infinite());
  const RationalMap h = normalize(Polynomial({1.0, 0.0, 2.0}), Polynomial({0.0, 0.0, 1.0}));  // (1 + 2z^2)/z^2
  CHECK(std::abs(h(SpherePoint::infinity()).finite_value() - 2.0) < 1e-15);
}

TEST_CASE("charts agree: f near infinity equals 1/F(1/z) for F the inverted map") {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const RationalMap f = testing::random_map(rng, 2 + trial % 4);
    const RationalMap inv = f.conjugate_by_inversion();
    for (int k = 0; k < 10; ++k) {
      const Complex z = testing::random_complex(rng, 3.0);
      const SpherePoint direct = f(SpherePoint(z));
      const SpherePoint via = SpherePoint::homogeneous(1.0, inv(SpherePoint(1.0 / z)).finite_value());
      CHECK(chordal(direct, via) < 1e-8);
    }
  }
}

TEST_CASE("chart derivative reads f' in the charts of x and f(x)") {
  const Complex h = 1e-6;
  for (Complex z : {Complex(0.3, 0.2), Complex(-1.9, 0.1), Complex(1.2, -0.4)}) {
    const Complex fz = g(z);
    const Complex numeric = (g(z + h) - g(z - h)) / (2.0 * h);
    // chart at infinity: coordinate 1/f on the image, u = 1/z on the source
    Complex expect = std::abs(fz) <= 1.0 ? numeric : -numeric / (fz * fz);
    if (std::abs(z) > 1.0) expect *= -z * z;
    CHECK(std::abs(g.chart_derivative(SpherePoint(z)) - expect) < 1e-6 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("critical points of the cubic") {
  const auto cps = critical_points(g);
  REQUIRE(cps.size() == 3);
  CHECK(chordal(cps[0].location, SpherePoint(0.0)) < 1e-9);
  CHECK(cps[0].local_degree == 3);
  CHECK(chordal(cps[1].location, SpherePoint(1.0)) < 1e-9);
  CHECK(cps[1].local_degree == 2);
  CHECK(cps[2].location.is_infinite());
  CHECK(cps[2].local_degree == 2);
}

TEST_CASE("Riemann-Hurwitz: 2d - 2 critical points on 50 random maps") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 4;
    const RationalMap f = testing::random_map(rng, d);
    CHECK(local_degree_sum(critical_points(f)) == 2 * d - 2);
  }
  // and on maps with degenerate critical structure
  CHECK(local_degree_sum(critical_points(normalize(Polynomial::monomial(5), Polynomial::constant(1.0)))) == 8);
  CHECK(local_degree_sum(critical_points(g)) == 4);
}

TEST_CASE("fibers have d points with multiplicity and map to the value") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 4;
    const RationalMap f = testing::random_map(rng, d);
    const SpherePoint v(testing::random_complex(rng, 2.0));
    const auto fiber = preimages(f, v);
    int total = 0;
    for (const auto& p : fiber) {
      total += p.multiplicity;
      CHECK(chordal(f(p.point), v) < 1e-7);
    }
    CHECK(total == d);
  }
  // a critical value: g^-1(-2) = {0 with multiplicity 3}
  const auto fiber = preimages(g, SpherePoint(-2.0));
  REQUIRE(fiber.size() == 1);
  CHECK(fiber[0].multiplicity == 3);
  CHECK(std::abs(fiber[0].point.finite_value()) < 1e-6);
  // fiber over infinity contains infinity and the pole
  const auto poles = preimages(g, SpherePoint::infinity());
  int total = 0;
  bool has_inf = false;
  for (const auto& p : poles) {
    total += p.multiplicity;
    has_inf = has_inf || p.point.is_infinite();
  }
  CHECK(total == 3);
  CHECK(has_inf);
}

TEST_CASE("composition and explicit iterates") {
  Rng rng(7);
  const RationalMap g2 = compose_self(g, 2);
  CHECK(g2.degree() == 9);
  for (int k = 0; k < 20; ++k) {
    const SpherePoint z(testing::random_complex(rng));
    CHECK(chordal(g2(z), iterate(g, z, 2)) < 1e-9);
  }
  const RationalMap f = testing::random_map(rng, 2);
  const RationalMap fg = compose(f, g);
  CHECK(fg.degree() == 6);
  for (int k = 0; k < 20; ++k) {
    const SpherePoint z(testing::random_complex(rng));
    CHECK(chordal(fg(z), f(g(z))) < 1e-8);
  }
  CHECK_THROWS_AS(compose_self(g, 8), DegreeBoundError);
  std::vector<Complex> probes{0.1, Complex(0.2, 0.7), -3.0};
  CHECK(map_identity_residual(g, g, probes) == 0.0);
  CHECK(map_identity_residual(g, f, probes) > 1e-3);
}
