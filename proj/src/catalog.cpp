#include "fatou/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>

#include "fatou/error.hpp"

namespace fatou::catalog {

namespace {

Polynomial basilica_core(int d) {
  // p_d(z) = (d-1) z^d - d z^(d-1) + 1
  std::vector<Complex> c(static_cast<size_t>(d) + 1, 0.0);
  c[0] = 1.0;
  c[static_cast<size_t>(d) - 1] = -static_cast<double>(d);
  c[static_cast<size_t>(d)] = static_cast<double>(d - 1);
  return Polynomial(std::move(c));
}

int parse_int(const std::string& s, const std::string& name) {
  int v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidArgument("bad integer '" + s + "' in catalog name " + name);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    const size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

RationalMap pseudo_basilica(int d) {
  if (d < 2) throw InvalidArgument("pseudo_basilica: d must be at least 2");
  // p_d o M with M = (z-1)/z gives A(z) / z^d.
  const auto [a, zd] = poly_compose(basilica_core(d), Polynomial({-1.0, 1.0}), Polynomial({0.0, 1.0}));
  // N_d(w) = ((1-d) w + (d-1)) / w applied to w = A / z^d.
  const double k = static_cast<double>(d - 1);
  return normalize(Complex(-k) * a + Complex(k) * zd, a);
}

RationalMap pseudo_rabbit(int d, Complex r) {
  if (r == Complex(0.0)) throw InvalidArgument("pseudo_rabbit: r must be nonzero");
  const RationalMap f = pseudo_basilica(d);
  return RationalMap(r / static_cast<double>(d - 1) * f.num(), f.den());
}

namespace {

// g_r^3(0) as a function of r, with its r-derivative, in the finite chart.
std::optional<std::pair<Complex, Complex>> third_image_of_zero(const RationalMap& f, int d, Complex r) {
  const Polynomial w = f.wronskian();
  const double s = 1.0 / static_cast<double>(d - 1);
  Complex z = 0.0, dz = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Complex q = f.den()(z);
    if (q == Complex(0.0) || !(std::abs(z) < 1e8)) return std::nullopt;
    const Complex base = f.num()(z) / q;
    const Complex dbase = w(z) / (q * q);
    dz = s * (base + r * dbase * dz);
    z = s * r * base;
  }
  return std::make_pair(z, dz);
}

// Newton in r for a simple root.
Complex polish_rabbit_root(const RationalMap& f, int d, Complex r) {
  auto cur = third_image_of_zero(f, d, r);
  for (int it = 0; it < 60 && cur && std::abs(cur->first) > 0.0; ++it) {
    if (cur->second == Complex(0.0)) break;
    const Complex next = r - cur->first / cur->second;
    auto nv = third_image_of_zero(f, d, next);
    if (!nv || !(std::abs(nv->first) < std::abs(cur->first))) break;
    r = next;
    cur = nv;
  }
  return r;
}

// X/X' where (X, Y) is the homogeneous orbit of 0 after three steps of g_r,
// tracked with its r-derivative.  Each step drops a common scalar.
class RabbitRatio {
 public:
  RabbitRatio(const RationalMap& f, int d) : f_(f), scale_(static_cast<double>(d - 1)) {}

  Complex operator()(Complex r) const {
    const double n = f_.degree();
    Complex x = 0.0, y = 1.0, dx = 0.0, dy = 0.0;
    for (int k = 0; k < 3; ++k) {
      Complex p, dpx, dpy, q, dqx, dqy;
      if (std::abs(y) >= std::abs(x)) {
        const Complex u = x / y;
        auto [a, da] = f_.num().eval_with_derivative(u);
        auto [b, db] = f_.den().eval_with_derivative(u);
        p = y * a;
        dpx = da;
        dpy = n * a - u * da;
        q = y * b;
        dqx = db;
        dqy = n * b - u * db;
      } else {
        const Complex u = y / x;
        auto [a, da] = f_.num_at_infinity().eval_with_derivative(u);
        auto [b, db] = f_.den_at_infinity().eval_with_derivative(u);
        p = x * a;
        dpx = n * a - u * da;
        dpy = da;
        q = x * b;
        dqx = n * b - u * db;
        dqy = db;
      }
      const Complex nx = r * p;
      const Complex ny = scale_ * q;
      const Complex ndx = p + r * (dpx * dx + dpy * dy);
      const Complex ndy = scale_ * (dqx * dx + dqy * dy);
      const double s = std::max(std::abs(nx), std::abs(ny));
      if (!(s > 0.0)) return 0.0;
      x = nx / s;
      y = ny / s;
      dx = ndx / s;
      dy = ndy / s;
    }
    if (x == Complex(0.0)) return 0.0;
    return x / dx;
  }

 private:
  const RationalMap& f_;
  double scale_;
};

}  // namespace

std::vector<Complex> pseudo_rabbit_roots(int d) {
  const RationalMap f = pseudo_basilica(d);
  const Polynomial r({0.0, 1.0});
  const Polynomial scale = Polynomial::constant(static_cast<double>(d - 1));
  // Orbit of 0 as homogeneous coordinates whose entries are polynomials in r.
  Polynomial x;
  Polynomial y = Polynomial::constant(1.0);
  for (int step = 0; step < 3; ++step) {
    Polynomial nx = r * homogeneous_substitute(f.num(), f.degree(), x, y);
    Polynomial ny = scale * homogeneous_substitute(f.den(), f.degree(), x, y);
    x = std::move(nx);
    y = std::move(ny);
  }

  std::vector<Complex> out;
  const auto approx = aberth_refine(poly_root_approximations(x), RabbitRatio(f, d));
  for (const auto& root : cluster_roots(approx, RootOptions{}.tol)) {
    // Cluster centres are already the best estimate of a repeated root.
    const Complex v = root.multiplicity == 1 ? polish_rabbit_root(f, d, root.value) : root.value;
    if (std::abs(v) < 1e-8) continue;  // g_r(0) = -r must not vanish
    if (std::abs(y(v)) <= 1e-8 * y.evaluation_scale(v)) continue;
    const RationalMap g = pseudo_rabbit(d, v);
    if (chordal(iterate(g, SpherePoint(0.0), 3), SpherePoint(0.0)) > 1e-6) continue;
    out.push_back(v);
  }
  // Conjugate pairs differ in their real parts only by rounding.
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-8 * std::max(1.0, std::abs(a))) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

RationalMap displayed_cubic() { return normalize(Polynomial({2.0, -3.0, 0.0, 1.0}), Polynomial({-1.0, 1.5})); }

RationalMap displayed_quartic() {
  const Polynomial num = 3.0 * Polynomial::linear_factor(1.0).pow(3) * Polynomial::linear_factor(-3.0);
  return normalize(num, Polynomial({3.0, -8.0, 6.0}));
}

PinchSolution solve_pinch_params() {
  const Polynomial num = Polynomial::linear_factor(1.0).pow(2) * Polynomial::linear_factor(-2.0);
  const Polynomial dnum = num.derivative();
  // With den = a z - b the Wronskian is a (z num' - num) - b num'.
  const Polynomial u = Polynomial({0.0, 1.0}) * dnum - num;
  const Polynomial& v = dnum;
  // Vanishing to second order at 0 means W_0 = W_1 = 0, linear in (a, b).
  const Complex m00 = u[0], m01 = -v[0], m10 = u[1], m11 = -v[1];
  const double det = std::abs(m00 * m11 - m01 * m10);
  const double size = std::max({std::abs(m00), std::abs(m01), std::abs(m10), std::abs(m11)});
  if (size == 0.0) throw ConvergenceError("solve_pinch_params: derivative conditions are vacuous");
  if (det > 1e-12 * size * size) throw ConvergenceError("solve_pinch_params: only the zero denominator solves the derivative conditions");
  // Rank one: (a, b) is proportional to (-row1, row0) of the larger row.
  Complex dir_a, dir_b;
  if (std::abs(m00) + std::abs(m01) >= std::abs(m10) + std::abs(m11)) {
    dir_a = -m01;
    dir_b = m00;
  } else {
    dir_a = -m11;
    dir_b = m10;
  }
  if (dir_b == Complex(0.0)) throw ConvergenceError("solve_pinch_params: b is forced to zero");

  // g(0) = num(0) / (-b) has to be a simple zero of num.
  std::vector<PinchSolution> found;
  for (const auto& z : poly_roots(num)) {
    if (z.multiplicity != 1 || z.value == Complex(0.0)) continue;
    const Complex b = -num(0.0) / z.value;
    const Complex a = dir_a * (b / dir_b);
    const Polynomial den({-b, a});
    const RationalMap g(num, den);
    const Polynomial w = g.wronskian();
    const Complex d0 = den(0.0);
    const Complex g1 = w(0.0) / (d0 * d0);
    const Complex g2 = (w.derivative()(0.0) * d0 - 2.0 * w(0.0) * den.derivative()(0.0)) / (d0 * d0 * d0);
    const SpherePoint back = iterate(g, SpherePoint(0.0), 2);
    found.push_back({a, b, den, g, std::abs(g1), std::abs(g2), chordal(back, SpherePoint(0.0)) / 2.0});
  }
  if (found.size() != 1) {
    throw ConvergenceError("solve_pinch_params: expected a unique solution, found " + std::to_string(found.size()));
  }
  return found.front();
}

RationalMap lookup(const std::string& name) {
  if (name == "paper-g") return displayed_cubic();
  if (name == "paper-degree4") return displayed_quartic();
  const auto parts = split(name, ':');
  if (parts[0] == "pseudo-basilica" && parts.size() == 2) return pseudo_basilica(parse_int(parts[1], name));
  if (parts[0] == "pseudo-rabbit" && parts.size() == 3) {
    const int d = parse_int(parts[1], name);
    const int idx = parse_int(parts[2], name);
    const auto roots = pseudo_rabbit_roots(d);
    if (idx < 0 || idx >= static_cast<int>(roots.size())) {
      throw InvalidArgument("pseudo-rabbit root index " + parts[2] + " out of range (have " +
                            std::to_string(roots.size()) + ")");
    }
    return pseudo_rabbit(d, roots[static_cast<size_t>(idx)]);
  }
  throw InvalidArgument("unknown catalog map '" + name + "'");
}

std::vector<std::string> names() {
  std::vector<std::string> out{"paper-g", "paper-degree4"};
  for (int d = 2; d <= 6; ++d) out.push_back("pseudo-basilica:" + std::to_string(d));
  const auto roots = pseudo_rabbit_roots(3);
  for (size_t k = 0; k < roots.size(); ++k) out.push_back("pseudo-rabbit:3:" + std::to_string(k));
  return out;
}

}  // namespace fatou::catalog
