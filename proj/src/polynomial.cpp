#include "fatou/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "fatou/error.hpp"

namespace fatou {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Complex> coeffs) : c_(coeffs) { trim(); }

Polynomial Polynomial::monomial(int k, Complex c) {
  std::vector<Complex> v(static_cast<size_t>(k) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == Complex(0.0)) c_.pop_back();
}

Complex Polynomial::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0.0;
  return c_[static_cast<size_t>(k)];
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::pair<Complex, Complex> Polynomial::eval_with_derivative(Complex z) const {
  Complex p = 0.0;
  Complex dp = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Complex> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::reversed(int n) const {
  if (n < degree()) throw InvalidArgument("reversed: n below degree");
  std::vector<Complex> r(static_cast<size_t>(n) + 1, 0.0);
  for (int k = 0; k <= degree(); ++k) r[static_cast<size_t>(n - k)] = c_[static_cast<size_t>(k)];
  return Polynomial(std::move(r));
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::evaluation_scale(Complex z) const {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::stripped(double rel) const {
  const double cut = rel * max_abs_coefficient();
  std::vector<Complex> v = c_;
  while (!v.empty() && std::abs(v.back()) <= cut) v.pop_back();
  return Polynomial(std::move(v));
}

Polynomial Polynomial::deflate(Complex r) const {
  if (c_.size() <= 1) return {};
  std::vector<Complex> q(c_.size() - 1);
  Complex carry = 0.0;
  for (size_t k = c_.size() - 1; k >= 1; --k) {
    carry = carry * r + c_[k];
    q[k - 1] = carry;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw InvalidArgument("negative polynomial power");
  Polynomial result = constant(1.0);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::operator-() const { return Complex(-1.0) * *this; }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> v(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> v(a.c_.size() + b.c_.size() - 1, 0.0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == Complex(0.0)) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(Complex s, const Polynomial& p) {
  std::vector<Complex> v = p.c_;
  for (auto& c : v) c *= s;
  return Polynomial(std::move(v));
}

Polynomial homogeneous_substitute(const Polynomial& p, int n, const Polynomial& x,
                                  const Polynomial& y) {
  if (n < p.degree()) throw InvalidArgument("homogenization degree below polynomial degree");
  // Horner in the homogeneous form: ((a_n X + a_{n-1} Y) X + a_{n-2} Y^2) ...
  std::vector<Polynomial> ypow(static_cast<size_t>(n) + 1);
  ypow[0] = Polynomial::constant(1.0);
  for (int k = 1; k <= n; ++k) ypow[static_cast<size_t>(k)] = ypow[static_cast<size_t>(k) - 1] * y;
  Polynomial acc;
  Polynomial xpow = Polynomial::constant(1.0);
  for (int k = 0; k <= n; ++k) {
    if (p[k] != Complex(0.0)) acc = acc + p[k] * (xpow * ypow[static_cast<size_t>(n - k)]);
    if (k < n) xpow = xpow * x;
  }
  return acc;
}

std::pair<Polynomial, Polynomial> poly_compose(const Polynomial& outer, const Polynomial& inner_num,
                                               const Polynomial& inner_den) {
  if (inner_den.is_zero()) throw InvalidArgument("poly_compose: zero denominator");
  const int n = std::max(outer.degree(), 0);
  return {homogeneous_substitute(outer, n, inner_num, inner_den), inner_den.pow(n)};
}

namespace {

// p(z)/p'(z) and |p(z)| / sum |a_k||z|^k, using the reversed polynomial
// outside the unit disc so large iterates cannot overflow.
struct NewtonRatio {
  Complex ratio;
  double rel_residual;
  bool exact_zero;
};

NewtonRatio newton_ratio(const Polynomial& p, const Polynomial& rev, Complex z) {
  const int n = p.degree();
  if (std::abs(z) <= 1.0) {
    auto [v, dv] = p.eval_with_derivative(z);
    const double scale = p.evaluation_scale(z);
    if (v == Complex(0.0)) return {0.0, 0.0, true};
    return {v / dv, std::abs(v) / scale, false};
  }
  const Complex w = 1.0 / z;
  auto [q, dq] = rev.eval_with_derivative(w);
  const double scale = rev.evaluation_scale(w);
  if (q == Complex(0.0)) return {0.0, 0.0, true};
  return {z * q / (static_cast<double>(n) * q - w * dq), std::abs(q) / scale, false};
}

// Positive root of |a_n| x^n - sum_{k<n} |a_k| x^k.
double cauchy_radius(const Polynomial& p) {
  const int n = p.degree();
  std::vector<double> a(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) a[static_cast<size_t>(k)] = std::abs(p[k]);
  double x = 0.0;
  for (int k = 0; k < n; ++k) x = std::max(x, a[static_cast<size_t>(k)] / a[static_cast<size_t>(n)]);
  x += 1.0;
  for (int it = 0; it < 200; ++it) {
    double f = a[static_cast<size_t>(n)];
    double df = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      df = df * x + f;
      f = f * x - a[static_cast<size_t>(k)];
    }
    if (!(df > 0.0)) break;
    const double next = x - f / df;
    if (!(next > 0.0) || std::abs(next - x) <= 1e-12 * x) {
      if (next > 0.0) x = next;
      break;
    }
    x = next;
  }
  return x;
}

std::vector<Complex> aberth(const Polynomial& p, const RootOptions& opts) {
  const int n = p.degree();
  const Polynomial rev = p.reversed(n);
  const double radius = cauchy_radius(p);
  std::vector<Complex> z(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n + 0.4;
    z[static_cast<size_t>(k)] = std::polar(radius, theta);
  }
  std::vector<bool> done(static_cast<size_t>(n), false);
  std::vector<double> residual(static_cast<size_t>(n), std::numeric_limits<double>::infinity());
  const double noise = 4.0 * n * kEps;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    bool all = true;
    for (size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const NewtonRatio nr = newton_ratio(p, rev, z[i]);
      residual[i] = nr.rel_residual;
      if (nr.exact_zero || nr.rel_residual <= noise) {
        done[i] = true;
        continue;
      }
      all = false;
      Complex repulsion = 0.0;
      for (size_t j = 0; j < z.size(); ++j) {
        if (j == i || z[j] == z[i]) continue;
        repulsion += 1.0 / (z[i] - z[j]);
      }
      const Complex denom = 1.0 - nr.ratio * repulsion;
      const Complex step = denom == Complex(0.0) ? nr.ratio : nr.ratio / denom;
      if (!finite(step)) continue;
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) {
        residual[i] = newton_ratio(p, rev, z[i]).rel_residual;
        done[i] = true;
      }
    }
    if (all) return z;
  }
  for (size_t i = 0; i < z.size(); ++i) {
    residual[i] = newton_ratio(p, rev, z[i]).rel_residual;
    if (!(residual[i] <= opts.tol)) {
      throw RootFinderError("poly_roots: Aberth iteration did not converge (degree " +
                                std::to_string(n) + ")",
                            z);
    }
  }
  return z;
}

Complex polish(const Polynomial& q, Complex x) {
  // q is p^(m-1); a few guarded Newton steps.
  const Polynomial dq = q.derivative();
  if (dq.is_zero()) return x;
  double best = std::abs(q(x));
  for (int it = 0; it < 4 && best > 0.0; ++it) {
    auto [v, dv] = q.eval_with_derivative(x);
    if (dv == Complex(0.0)) break;
    const Complex next = x - v / dv;
    const double r = std::abs(q(next));
    if (!(r < best)) break;
    best = r;
    x = next;
  }
  return x;
}

std::vector<Root> cluster(const Polynomial* p, std::span<const Complex> z, double tol) {
  const size_t n = z.size();
  std::vector<bool> used(n, false);
  std::vector<Root> out;
  std::vector<std::pair<double, size_t>> order;
  for (size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    order.clear();
    for (size_t j = 0; j < n; ++j) {
      if (!used[j]) order.emplace_back(std::abs(z[j] - z[i]), j);
    }
    std::sort(order.begin(), order.end());
    size_t take = 1;
    Complex center = z[i];
    for (size_t m = order.size(); m >= 2; --m) {
      // The m-th nearest iterate must lie inside the cluster diameter.
      if (order[m - 1].first >
          2.0 * std::pow(tol, 1.0 / static_cast<double>(m)) * std::max(1.0, 2.0 * std::abs(z[i]))) {
        continue;
      }
      Complex c = 0.0;
      for (size_t k = 0; k < m; ++k) c += z[order[k].second];
      c /= static_cast<double>(m);
      double spread = 0.0;
      for (size_t k = 0; k < m; ++k) spread = std::max(spread, std::abs(z[order[k].second] - c));
      const double allowed = std::pow(tol, 1.0 / static_cast<double>(m)) * std::max(1.0, std::abs(c));
      if (spread > allowed) continue;
      double gap = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        bool member = false;
        for (size_t k = 0; k < m && !member; ++k) member = order[k].second == j;
        if (!member) gap = std::min(gap, std::abs(z[j] - c));
      }
      if (gap < 20.0 * spread) continue;
      take = m;
      center = c;
      break;
    }
    for (size_t k = 0; k < take; ++k) used[order[k].second] = true;
    if (p != nullptr) {
      Polynomial q = *p;
      for (size_t k = 1; k < take; ++k) q = q.derivative();
      center = polish(q, center);
    }
    out.push_back({center, static_cast<int>(take)});
  }
  return out;
}

}  // namespace

std::vector<Root> poly_roots(const Polynomial& p, const RootOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("poly_roots: tol must be positive");
  if (p.degree() < 1) throw InvalidArgument("poly_roots: degree must be at least 1");
  for (const auto& c : p.coefficients()) {
    if (!finite(c)) throw InvalidArgument("poly_roots: non-finite coefficient");
  }

  std::vector<Root> roots;
  int zeros = 0;
  while (p[zeros] == Complex(0.0)) ++zeros;
  if (zeros > 0) roots.push_back({0.0, zeros});

  const auto cs = p.coefficients();
  const Polynomial q(std::vector<Complex>(cs.begin() + zeros, cs.end()));
  if (q.degree() == 1) {
    roots.push_back({-q[0] / q[1], 1});
  } else if (q.degree() > 1) {
    const auto approx = aberth(q, opts);
    auto clustered = cluster(&q, approx, opts.tol);
    roots.insert(roots.end(), clustered.begin(), clustered.end());
  }
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return roots;
}

std::vector<Complex> poly_root_approximations(const Polynomial& p, const RootOptions& opts) {
  if (p.degree() < 1) throw InvalidArgument("poly_root_approximations: degree must be at least 1");
  int zeros = 0;
  while (p[zeros] == Complex(0.0)) ++zeros;
  std::vector<Complex> out(static_cast<size_t>(zeros), 0.0);
  const auto cs = p.coefficients();
  const Polynomial q(std::vector<Complex>(cs.begin() + zeros, cs.end()));
  if (q.degree() == 1) {
    out.push_back(-q[0] / q[1]);
  } else if (q.degree() > 1) {
    const auto approx = aberth(q, opts);
    out.insert(out.end(), approx.begin(), approx.end());
  }
  return out;
}

std::vector<Complex> aberth_refine(std::vector<Complex> z, const NewtonRatioFn& ratio, int max_iterations) {
  // Coincident starts would never separate.
  for (size_t i = 0; i < z.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (z[j] == z[i]) z[i] += std::polar(1e-6 * std::max(1.0, std::abs(z[i])), 0.7 * static_cast<double>(i));
    }
  }
  std::vector<bool> done(z.size(), false);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool all = true;
    for (size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      const Complex r = ratio(z[i]);
      if (r == Complex(0.0) || !finite(r)) {
        done[i] = true;
        continue;
      }
      all = false;
      Complex repulsion = 0.0;
      for (size_t j = 0; j < z.size(); ++j) {
        if (j == i || z[j] == z[i]) continue;
        repulsion += 1.0 / (z[i] - z[j]);
      }
      const Complex denom = 1.0 - r * repulsion;
      const Complex step = denom == Complex(0.0) ? r : r / denom;
      if (!finite(step)) {
        done[i] = true;
        continue;
      }
      z[i] -= step;
      if (std::abs(step) <= 4.0 * kEps * std::max(std::abs(z[i]), 1e-300)) done[i] = true;
    }
    if (all) break;
  }
  return z;
}

std::vector<Root> cluster_roots(std::span<const Complex> approx, double tol) {
  return cluster(nullptr, approx, tol);
}

Polynomial from_roots(std::span<const Root> roots, Complex lead) {
  Polynomial acc = Polynomial::constant(lead);
  for (const auto& r : roots) acc = acc * Polynomial::linear_factor(r.value).pow(r.multiplicity);
  return acc;
}

}  // namespace fatou
