#include "fatou/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fatou/error.hpp"

namespace fatou {

namespace {

// Relative size of num(r) below which a denominator root r is treated as a
// common root and cancelled.
constexpr double kCancelTolerance = 1e-7;

// Values of a polynomial and its derivative in the chart of x: at u = z/w
// for the finite chart, at u = w/z (reversed coefficients) otherwise.
struct ChartValues {
  Complex a, da, b, db;
};

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)), degree_(std::max(num_.degree(), den_.degree())) {
  if (den_.is_zero()) throw InvalidArgument("rational map with zero denominator");
  if (num_.is_zero() || degree_ < 1) throw InvalidArgument("rational map must have degree at least 1");
  num_inf_ = num_.reversed(degree_);
  den_inf_ = den_.reversed(degree_);
}

SpherePoint RationalMap::operator()(const SpherePoint& x) const {
  if (x.in_finite_chart()) {
    const Complex u = x.z() / x.w();
    const Complex a = num_(u);
    const Complex b = den_(u);
    if (a == Complex(0.0) && b == Complex(0.0)) return SpherePoint::infinity();
    return SpherePoint::homogeneous(a, b);
  }
  const Complex t = x.w() / x.z();
  const Complex a = num_inf_(t);
  const Complex b = den_inf_(t);
  if (a == Complex(0.0) && b == Complex(0.0)) return SpherePoint::infinity();
  return SpherePoint::homogeneous(a, b);
}

Polynomial RationalMap::wronskian() const {
  const int np = num_.degree();
  const int nq = den_.degree();
  if (np + nq < 1) return {};
  std::vector<Complex> w(static_cast<size_t>(np + nq), 0.0);
  for (int i = 0; i <= np; ++i) {
    for (int j = 0; j <= nq; ++j) {
      if (i == j || i + j == 0) continue;
      w[static_cast<size_t>(i + j - 1)] += static_cast<double>(i - j) * num_[i] * den_[j];
    }
  }
  return Polynomial(std::move(w));
}

Complex RationalMap::chart_derivative(const SpherePoint& x) const {
  ChartValues v;
  if (x.in_finite_chart()) {
    const Complex u = x.z() / x.w();
    std::tie(v.a, v.da) = num_.eval_with_derivative(u);
    std::tie(v.b, v.db) = den_.eval_with_derivative(u);
  } else {
    const Complex u = x.w() / x.z();
    std::tie(v.a, v.da) = num_at_infinity().eval_with_derivative(u);
    std::tie(v.b, v.db) = den_at_infinity().eval_with_derivative(u);
  }
  // Output chart: finite when |a| <= |b|, matching SpherePoint::in_finite_chart.
  if (std::abs(v.a) <= std::abs(v.b)) return (v.da * v.b - v.a * v.db) / (v.b * v.b);
  return (v.db * v.a - v.b * v.da) / (v.a * v.a);
}

RationalMap RationalMap::conjugate_by_inversion() const {
  return RationalMap(den_at_infinity(), num_at_infinity());
}

double coprimality_measure(const Polynomial& num, const Polynomial& den) {
  if (den.degree() < 1) return 1.0;
  if (num.is_zero()) return 0.0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& r : poly_roots(den)) {
    const double scale = num.evaluation_scale(r.value);
    worst = std::min(worst, scale > 0.0 ? std::abs(num(r.value)) / scale : 0.0);
  }
  return worst;
}

RationalMap normalize(const Polynomial& raw_num, const Polynomial& raw_den) {
  if (raw_den.is_zero()) throw InvalidArgument("normalize: zero denominator");
  if (raw_num.is_zero()) throw InvalidArgument("normalize: constant map (degree 0)");

  const double floor = kCoefficientFloor * std::max(raw_num.max_abs_coefficient(), raw_den.max_abs_coefficient());
  auto strip = [floor](const Polynomial& p) {
    std::vector<Complex> c(p.coefficients().begin(), p.coefficients().end());
    while (!c.empty() && std::abs(c.back()) <= floor) c.pop_back();
    return Polynomial(std::move(c));
  };
  Polynomial num = strip(raw_num);
  Polynomial den = strip(raw_den);

  if (den.degree() >= 1 && num.degree() >= 1) {
    for (const auto& r : poly_roots(den)) {
      for (int k = 0; k < r.multiplicity && num.degree() >= 1 && den.degree() >= 1; ++k) {
        const double scale = num.evaluation_scale(r.value);
        if (std::abs(num(r.value)) > kCancelTolerance * scale) break;
        num = num.deflate(r.value);
        den = den.deflate(r.value);
      }
    }
  }

  const int d = std::max(num.degree(), den.degree());
  if (d < 2) {
    throw InvalidArgument("normalize: degree " + std::to_string(std::max(d, 0)) +
                          " after cancellation; the map must have degree at least 2");
  }
  if (coprimality_measure(num, den) <= kCoprimalityThreshold) {
    throw InvalidArgument("normalize: numerator and denominator are not coprime");
  }
  return RationalMap(std::move(num), std::move(den));
}

SpherePoint eval_sphere(const RationalMap& f, const SpherePoint& x) { return f(x); }

std::vector<CriticalPoint> critical_points(const RationalMap& f) {
  std::vector<CriticalPoint> out;
  const Polynomial w = f.wronskian().stripped(kCoefficientFloor);
  if (w.degree() >= 1) {
    for (const auto& r : poly_roots(w)) out.push_back({SpherePoint(r.value), r.multiplicity + 1});
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    const Complex x = a.location.finite_value();
    const Complex y = b.location.finite_value();
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });

  // Order of vanishing of the Wronskian of 1/f(1/z) at 0.
  const Polynomial wi = f.conjugate_by_inversion().wronskian();
  const double floor = kCoefficientFloor * wi.max_abs_coefficient();
  int order = 0;
  while (order <= wi.degree() && std::abs(wi[order]) <= floor) ++order;
  if (order > 0) out.push_back({SpherePoint::infinity(), order + 1});
  return out;
}

std::vector<Preimage> preimages(const RationalMap& f, const SpherePoint& v) {
  const Polynomial h = (v.w() * f.num() - v.z() * f.den()).stripped(kCoefficientFloor);
  if (h.is_zero()) throw InvalidArgument("preimages: map is constant");
  std::vector<Preimage> out;
  int at_infinity = f.degree() - h.degree();
  if (h.degree() >= 1) {
    for (const auto& r : poly_roots(h)) {
      const SpherePoint p(r.value);
      if (near(p, SpherePoint::infinity(), 1e-12)) {
        at_infinity += r.multiplicity;
      } else {
        out.push_back({p, r.multiplicity});
      }
    }
  }
  if (at_infinity > 0) out.push_back({SpherePoint::infinity(), at_infinity});
  return out;
}

SpherePoint iterate(const RationalMap& f, SpherePoint x, int n) {
  if (n < 0) throw InvalidArgument("iterate: negative count");
  for (int k = 0; k < n; ++k) x = f(x);
  return x;
}

RationalMap compose(const RationalMap& f, const RationalMap& g) {
  const int d = f.degree();
  return RationalMap(homogeneous_substitute(f.num(), d, g.num(), g.den()),
                     homogeneous_substitute(f.den(), d, g.num(), g.den()));
}

RationalMap compose_self(const RationalMap& f, int n, long bound) {
  if (n < 0) throw InvalidArgument("compose_self: negative count");
  long deg = 1;
  for (int k = 0; k < n; ++k) {
    deg *= f.degree();
    if (deg > bound) {
      throw DegreeBoundError("compose_self: degree " + std::to_string(f.degree()) + "^" +
                             std::to_string(n) + " exceeds bound " + std::to_string(bound));
    }
  }
  RationalMap acc(Polynomial({0.0, 1.0}), Polynomial::constant(1.0));
  for (int k = 0; k < n; ++k) acc = (k == 0) ? f : compose(f, acc);
  return acc;
}

double map_identity_residual(const RationalMap& f, const RationalMap& g, std::span<const Complex> probes) {
  double worst = 0.0;
  for (const Complex z : probes) {
    const Complex lhs = f.num()(z) * g.den()(z);
    const Complex rhs = g.num()(z) * f.den()(z);
    const double scale = std::abs(lhs) + std::abs(rhs);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace fatou
