#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fatou/error.hpp"
#include "fatou/moebius.hpp"
#include "fatou/polynomial.hpp"
#include "fatou/sphere.hpp"
#include "support.hpp"

using namespace fatou;
using fatou::testing::Rng;

TEST_CASE("chordal metric basics") {
  CHECK(chordal(SpherePoint(0.0), SpherePoint::infinity()) == doctest::Approx(2.0));
  CHECK(chordal(Complex(1.0), Complex(-1.0)) == doctest::Approx(2.0));
  CHECK(chordal(Complex(1.0), Complex(0.0, 1.0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(chordal(SpherePoint(1e300), SpherePoint::infinity()) < 1e-200);
  CHECK(chordal(Complex(3.0, 4.0), Complex(3.0, 4.0)) == 0.0);
  CHECK_THROWS_AS(SpherePoint::homogeneous(0.0, 0.0), InvalidArgument);
}

TEST_CASE("chordal metric is symmetric and obeys the triangle inequality") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Complex a = testing::random_complex(rng, 5.0);
    const Complex b = testing::random_complex(rng, 5.0);
    const Complex c = testing::random_complex(rng, 5.0);
    CHECK(chordal(a, b) == doctest::Approx(chordal(b, a)));
    CHECK(chordal(a, c) <= chordal(a, b) + chordal(b, c) + 1e-15);
    CHECK(chordal(a, b) <= 2.0 + 1e-15);
    // inversion is an isometry
    CHECK(chordal(1.0 / a, 1.0 / b) == doctest::Approx(chordal(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("sphere points keep both charts bounded") {
  const SpherePoint big(Complex(1e200, 0.0));
  CHECK(std::abs(big.value_at_infinity_chart() - 1e-200) < 1e-210);
  CHECK_FALSE(big.in_finite_chart());
  CHECK(SpherePoint(0.5).in_finite_chart());
  CHECK(SpherePoint::infinity().is_infinite());
  CHECK(SpherePoint(Complex(2.0, 1.0)).conj().finite_value() == Complex(2.0, -1.0));
}

TEST_CASE("polynomial arithmetic") {
  const Polynomial p{1.0, 2.0, 3.0};  // 1 + 2z + 3z^2
  CHECK(p.degree() == 2);
  CHECK(p(2.0) == Complex(17.0));
  CHECK(p.derivative() == Polynomial({2.0, 6.0}));
  CHECK(p.reversed(3) == Polynomial({0.0, 3.0, 2.0, 1.0}));
  CHECK((p * Polynomial::linear_factor(1.0)).deflate(1.0) == p);
  CHECK(Polynomial({1.0, 1.0}).pow(3) == Polynomial({1.0, 3.0, 3.0, 1.0}));
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  const auto [v, dv] = p.eval_with_derivative(Complex(0.0, 1.0));
  CHECK(std::abs(v - p(Complex(0.0, 1.0))) < 1e-15);
  CHECK(std::abs(dv - p.derivative()(Complex(0.0, 1.0))) < 1e-15);
  CHECK(Polynomial({1.0, 1.0, 1e-20}).stripped(1e-13).degree() == 1);
}

TEST_CASE("composition matches pointwise evaluation") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial outer = testing::random_polynomial(rng, 3);
    const Polynomial a = testing::random_polynomial(rng, 2);
    const Polynomial b = testing::random_polynomial(rng, 2);
    const auto [n, d] = poly_compose(outer, a, b);
    for (int k = 0; k < 10; ++k) {
      const Complex z = testing::random_complex(rng);
      const Complex direct = outer(a(z) / b(z));
      CHECK(std::abs(n(z) / d(z) - direct) <= 1e-9 * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("roots of small polynomials") {
  // z^3 - 3z + 2 = (z-1)^2 (z+2)
  const auto r = poly_roots(Polynomial({2.0, -3.0, 0.0, 1.0}));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0].value + 2.0) < 1e-10);
  CHECK(r[0].multiplicity == 1);
  CHECK(std::abs(r[1].value - 1.0) < 1e-8);
  CHECK(r[1].multiplicity == 2);

  const auto s = poly_roots(Polynomial({0.0, 0.0, 1.0, 1.0}));  // z^2 (z+1)
  int total = 0;
  for (const auto& x : s) total += x.multiplicity;
  CHECK(total == 3);
  CHECK_THROWS_AS(poly_roots(Polynomial::constant(3.0)), InvalidArgument);
}

TEST_CASE("roots recovered from random factored polynomials") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    std::vector<Root> truth;
    for (int k = 0; k < n; ++k) truth.push_back({testing::random_complex(rng, 2.0), 1});
    // keep well separated roots only
    bool separated = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) separated = separated && std::abs(truth[i].value - truth[j].value) > 1e-2;
    if (!separated) continue;
    const auto found = poly_roots(from_roots(truth, testing::random_complex(rng) + 2.0));
    REQUIRE(found.size() == truth.size());
    for (const auto& t : truth) {
      double best = 1e9;
      for (const auto& f : found) best = std::min(best, std::abs(f.value - t.value));
      CHECK(best < 1e-7);
    }
  }
}

TEST_CASE("cluster_roots merges a triple root") {
  const double e = 1e-5;
  std::vector<Complex> approx{1.0 + e, 1.0 + e * Complex(-0.5, 0.8660254), 1.0 + e * Complex(-0.5, -0.8660254), 4.0};
  const auto r = cluster_roots(approx, 1e-12);
  REQUIRE(r.size() == 2);
  int triple = 0;
  for (const auto& x : r) triple += x.multiplicity == 3 ? 1 : 0;
  CHECK(triple == 1);
}

TEST_CASE("Moebius transforms form a group action") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const MoebiusTransform m(testing::random_complex(rng), testing::random_complex(rng),
                             testing::random_complex(rng), testing::random_complex(rng));
    const MoebiusTransform n(testing::random_complex(rng), testing::random_complex(rng),
                             testing::random_complex(rng), testing::random_complex(rng));
    const SpherePoint z(testing::random_complex(rng));
    CHECK(chordal(m.compose(n)(z), m(n(z))) < 1e-9);
    CHECK(chordal(m.inverse()(m(z)), z) < 1e-9);
    CHECK(chordal(MoebiusTransform::identity()(z), z) < 1e-15);
  }
  const auto s = MoebiusTransform::send_to_infinity(Complex(2.0, 1.0));
  CHECK(s(SpherePoint(Complex(2.0, 1.0))).is_infinite());
  CHECK(chordal(s(SpherePoint::infinity()), SpherePoint(0.0)) < 1e-15);
  CHECK_THROWS_AS(MoebiusTransform(1.0, 2.0, 2.0, 4.0), InvalidArgument);
}

TEST_CASE("Moebius conjugation agrees with pointwise conjugation") {
  Rng rng(29);
  const Polynomial num{2.0, -3.0, 0.0, 1.0};
  const Polynomial den{-1.0, 1.5};
  const MoebiusTransform m(1.0, 2.0, Complex(0.0, 1.0), 3.0);
  const auto [cn, cd] = moebius_conjugate(num, den, m);
  for (int k = 0; k < 20; ++k) {
    const Complex z = testing::random_complex(rng);
    const Complex w = m.inverse()(SpherePoint(z)).finite_value();
    const Complex fw = num(w) / den(w);
    const SpherePoint expect = m(SpherePoint(fw));
    CHECK(chordal(SpherePoint(cn(z) / cd(z)), expect) < 1e-9);
  }
}
