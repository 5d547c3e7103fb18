#include "fatou/rays.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

#include "fatou/error.hpp"

namespace fatou {

RayAngle::RayAngle(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw InvalidArgument("ray angle denominator must be positive");
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

RayAngle RayAngle::parse(const std::string& text) {
  if (text == "0") return RayAngle(0, 1);
  const auto slash = text.find('/');
  if (slash == std::string::npos) throw InvalidArgument("angle '" + text + "' must be a fraction a/b");
  auto read = [&](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw InvalidArgument("angle '" + text + "' must be a fraction a/b of integers");
    }
    return v;
  };
  const std::string_view sv(text);
  const std::int64_t a = read(sv.substr(0, slash));
  const std::int64_t b = read(sv.substr(slash + 1));
  if (b <= 0) throw InvalidArgument("angle '" + text + "' needs a positive denominator");
  if (a < 0 || a >= b) throw InvalidArgument("angle '" + text + "' must lie in [0, 1)");
  return RayAngle(a, b);
}

RayAngle RayAngle::times(int m) const {
  // num < den, so the product fits whenever den * m does.
  return RayAngle((num_ * m) % den_, den_);
}

RayAngle RayAngle::reflected() const { return RayAngle(den_ - num_, den_); }

std::string RayAngle::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Potential at which the linear approximation of the Böttcher coordinate
// is used directly to seed the first shell.
constexpr double kSeedPotential = 1e12;

// f seen with the basin point moved to infinity, where it acts like
// alpha^-1 (alpha z)^m.
struct BasinChart {
  std::optional<RationalMap> conj;
  const RationalMap* map = nullptr;
  bool finite = false;
  Complex center;
  int m = 1;
  Complex alpha;

  Complex to_original(Complex zeta) const { return finite ? center + 1.0 / zeta : zeta; }
  Complex to_chart(Complex z) const { return finite ? 1.0 / (z - center) : z; }
};

BasinChart make_chart(const RationalMap& f, const SpherePoint& basin) {
  BasinChart ch;
  if (basin.is_infinite()) {
    ch.map = &f;
  } else {
    ch.finite = true;
    ch.center = basin.finite_value();
    const auto [n, d] = moebius_conjugate(f.num(), f.den(), MoebiusTransform::send_to_infinity(ch.center));
    ch.conj = normalize(n, d);
    ch.map = &*ch.conj;
  }
  const RationalMap& g = *ch.map;
  const int excess = g.num().degree() - g.den().degree();
  if (excess < 1) throw InvalidArgument("ray basin point " + basin.to_string() + " is not fixed");
  ch.m = excess;
  if (ch.m < 2) throw InvalidArgument("ray basin point " + basin.to_string() + " is not superattracting");

  const Complex c = g.num().leading() / g.den().leading();
  const double root_mod = std::pow(std::abs(c), 1.0 / (ch.m - 1));
  double best = 1e300;
  for (int k = 0; k < ch.m - 1; ++k) {
    const double arg = std::remainder((std::arg(c) + kTwoPi * k) / (ch.m - 1), kTwoPi);
    if (std::abs(arg) < best - 1e-12) {
      best = std::abs(arg);
      ch.alpha = std::polar(root_mod, arg);
    }
  }
  return ch;
}

// Solves g(z) = target by Newton from a guess known to be close.
Complex newton_preimage(const RationalMap& g, const Polynomial& w, Complex target, Complex z) {
  for (int it = 0; it < 100; ++it) {
    const Complex q = g.den()(z);
    const Complex val = g.num()(z) / q;
    const Complex deriv = w(z) / (q * q);
    const Complex step = (val - target) / deriv;
    z -= step;
    if (std::abs(step) <= 1e-15 * std::abs(z)) return z;
  }
  throw ConvergenceError("ray seeding: Newton did not converge near potential " + std::to_string(std::abs(target)));
}

// Point of potential rho (|phi| = rho) on the ray of angle a, obtained by
// pulling back its linearized position at a potential of at least 1e12.
Complex seed_point(const BasinChart& ch, const Polynomial& w, const RayAngle& a, double rho) {
  std::vector<RayAngle> angles{a};
  std::vector<double> logs{std::log(rho)};
  while (logs.back() < std::log(kSeedPotential)) {
    angles.push_back(angles.back().times(ch.m));
    logs.push_back(logs.back() * ch.m);
  }
  auto linear = [&](size_t j) { return std::polar(std::exp(logs[j]), kTwoPi * angles[j].value()) / ch.alpha; };
  Complex z = linear(angles.size() - 1);
  for (size_t j = angles.size() - 1; j-- > 0;) z = newton_preimage(*ch.map, w, z, linear(j));
  return z;
}

struct OrbitTrace {
  std::vector<RayAngle> angles;
  std::vector<std::vector<Complex>> paths;  // chart coordinates
  int subsamples = 0;
};

// Returns nullopt when nearest-preimage matching is ambiguous somewhere.
std::optional<OrbitTrace> trace_lockstep(const BasinChart& ch, const RayAngle& t, const RayOptions& opts,
                                         int subsamples) {
  OrbitTrace out;
  out.subsamples = subsamples;
  out.angles.push_back(t);
  for (;;) {
    const RayAngle next = out.angles.back().times(ch.m);
    if (std::find(out.angles.begin(), out.angles.end(), next) != out.angles.end()) break;
    out.angles.push_back(next);
  }
  const size_t n = out.angles.size();
  std::vector<size_t> succ(n);
  for (size_t i = 0; i < n; ++i) {
    const RayAngle next = out.angles[i].times(ch.m);
    succ[i] = static_cast<size_t>(std::find(out.angles.begin(), out.angles.end(), next) - out.angles.begin());
  }

  const Polynomial w = ch.map->wronskian();
  const size_t per_level = static_cast<size_t>(subsamples);
  out.paths.assign(n, {});
  for (size_t i = 0; i < n; ++i) {
    out.paths[i].reserve(per_level * static_cast<size_t>(opts.depth + 1));
    for (int s = 0; s < subsamples; ++s) {
      const double rho = std::pow(opts.r0, std::pow(static_cast<double>(ch.m), -static_cast<double>(s) / subsamples));
      out.paths[i].push_back(seed_point(ch, w, out.angles[i], rho));
    }
  }

  for (int k = 0; k < opts.depth; ++k) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t s = 0; s < per_level; ++s) {
        const Complex target = out.paths[succ[i]][static_cast<size_t>(k) * per_level + s];
        const Complex prev = out.paths[i].back();
        double d1 = 1e300, d2 = 1e300;
        Complex best;
        bool branch_point = false;
        for (const auto& p : preimages(*ch.map, SpherePoint(target))) {
          if (p.point.is_infinite()) continue;
          const Complex z = p.point.finite_value();
          const double d = std::abs(z - prev);
          if (d < d1) {
            d2 = d1;
            d1 = d;
            best = z;
            branch_point = p.multiplicity > 1;
          } else if (d < d2) {
            d2 = d;
          }
        }
        if (branch_point || !(d1 < 0.5 * d2)) return std::nullopt;
        out.paths[i].push_back(best);
      }
    }
  }
  return out;
}

RayTrace finish_trace(const BasinChart& ch, const OrbitTrace& ot, size_t i, const RayOptions& opts) {
  RayTrace r;
  r.angle = ch.finite ? ot.angles[i].reflected() : ot.angles[i];
  const size_t per_level = static_cast<size_t>(ot.subsamples);
  r.path.reserve(ot.paths[i].size());
  for (const Complex& z : ot.paths[i]) r.path.push_back(ch.to_original(z));
  for (int k = 0; k <= opts.depth; ++k) r.samples.push_back(r.path[static_cast<size_t>(k) * per_level]);
  r.landing = r.samples.back();

  const size_t first = static_cast<size_t>(opts.depth + 1 - opts.window) * per_level;
  double diam = 0.0;
  for (size_t a = first; a < r.path.size(); ++a) {
    for (size_t b = a + 1; b < r.path.size(); ++b) diam = std::max(diam, chordal(r.path[a], r.path[b]));
  }
  r.residual = diam;
  r.landed = diam < opts.landing_tol;
  return r;
}

void check_options(const RayOptions& opts) {
  if (!(opts.r0 > 1.0)) throw InvalidArgument("ray start potential must exceed 1");
  if (opts.window < 1) throw InvalidArgument("ray landing window must be positive");
  if (opts.depth < opts.window) throw InvalidArgument("ray depth must be at least the landing window");
  if (opts.subsamples < 1) throw InvalidArgument("ray subsamples must be positive");
  if (!(opts.landing_tol > 0.0)) throw InvalidArgument("ray landing tolerance must be positive");
}

std::vector<RayTrace> trace_orbit_impl(const RationalMap& f, const SpherePoint& basin, const RayAngle& t,
                                       const RayOptions& opts) {
  check_options(opts);
  const BasinChart ch = make_chart(f, basin);
  int subsamples = opts.subsamples;
  for (int attempt = 0; attempt <= opts.max_refinements; ++attempt, subsamples *= 2) {
    // z -> 1/(z - basin) reverses orientation, so angles flip in the chart.
    const auto ot = trace_lockstep(ch, ch.finite ? t.reflected() : t, opts, subsamples);
    if (!ot) continue;
    std::vector<RayTrace> out;
    for (size_t i = 0; i < ot->angles.size(); ++i) out.push_back(finish_trace(ch, *ot, i, opts));
    return out;
  }
  throw ConvergenceError("ray " + t.to_string() + ": branch matching stayed ambiguous with " +
                         std::to_string(subsamples / 2) + " subsamples per shell");
}

double distance_to_segment(Complex q, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(q - a);
  const double s = std::clamp(((q - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(q - (a + s * ab));
}

// Even-odd crossing count of a rightward horizontal ray from q.
bool crossing_parity(Complex q, const std::vector<Complex>& poly) {
  bool inside = false;
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Complex a = poly[i], b = poly[j];
    if ((a.imag() > q.imag()) != (b.imag() > q.imag())) {
      const double x = a.real() + (q.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (q.real() < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

int basin_local_degree(const RationalMap& f, const SpherePoint& basin) {
  if (chordal(f(basin), basin) > 1e-9) throw InvalidArgument("point " + basin.to_string() + " is not fixed");
  if (basin.is_infinite()) return std::max(1, f.num().degree() - f.den().degree());
  const Complex a = basin.finite_value();
  const auto [n, d] = moebius_conjugate(f.num(), f.den(), MoebiusTransform::send_to_infinity(a));
  const RationalMap g = normalize(n, d);
  return std::max(1, g.num().degree() - g.den().degree());
}

std::vector<RayTrace> trace_ray_orbit(const RationalMap& f, const SpherePoint& basin, const RayAngle& t,
                                      const RayOptions& opts) {
  return trace_orbit_impl(f, basin, t, opts);
}

RayTrace trace_ray(const RationalMap& f, const SpherePoint& basin, const RayAngle& t, const RayOptions& opts) {
  return trace_orbit_impl(f, basin, t, opts).front();
}

double functoriality_residual(const RationalMap& f, const RayTrace& ray, const RayTrace& image) {
  double worst = 0.0;
  const size_t n = std::min(ray.samples.size(), image.samples.size() + 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    worst = std::max(worst, chordal(f(SpherePoint(ray.samples[k + 1])), SpherePoint(image.samples[k])));
  }
  return worst;
}

bool coland(const RationalMap& f, const SpherePoint& basin, const RayAngle& t1, const RayAngle& t2, double tol,
            const RayOptions& opts) {
  if (!(tol > 0.0)) throw InvalidArgument("coland tolerance must be positive");
  const RayTrace r1 = trace_ray(f, basin, t1, opts);
  const RayTrace r2 = trace_ray(f, basin, t2, opts);
  for (const auto* r : {&r1, &r2}) {
    if (!r->landed) {
      throw ConvergenceError("ray " + r->angle.to_string() + " did not land (residual " +
                             std::to_string(r->residual) + ")");
    }
  }
  return chordal(r1.landing, r2.landing) < tol;
}

bool separation_test(const RationalMap& f, const SpherePoint& basin, const RayAngle& t1, const RayAngle& t2,
                     Complex a, Complex b, const RayOptions& opts, double tol) {
  if (t1 == t2) throw InvalidArgument("separation test needs two different rays");
  const BasinChart ch = make_chart(f, basin);
  const RayTrace r1 = trace_ray(f, basin, t1, opts);
  const RayTrace r2 = trace_ray(f, basin, t2, opts);
  if (!r1.landed || !r2.landed || chordal(r1.landing, r2.landing) >= opts.landing_tol) {
    throw InvalidArgument("rays " + t1.to_string() + " and " + t2.to_string() + " do not land together");
  }
  for (Complex q : {a, b}) {
    if (ch.finite && q == ch.center) throw InvalidArgument("query point is the basin point, which lies on the curve");
  }

  std::vector<Complex> p1, p2;
  for (Complex z : r1.path) p1.push_back(ch.to_chart(z));
  for (Complex z : r2.path) p2.push_back(ch.to_chart(z));
  const Complex qa = ch.to_chart(a);
  const Complex qb = ch.to_chart(b);
  const Complex meet = 0.5 * (ch.to_chart(r1.landing) + ch.to_chart(r2.landing));

  // Both rays run out to the basin point at infinity; close them there with
  // an arc far outside everything of interest.
  double big = std::max({1.0, std::abs(qa), std::abs(qb)});
  for (Complex z : p1) big = std::max(big, std::abs(z));
  for (Complex z : p2) big = std::max(big, std::abs(z));
  big *= 4.0;

  std::vector<Complex> poly;
  poly.push_back(p1.front() * (big / std::abs(p1.front())));
  poly.insert(poly.end(), p1.begin(), p1.end());
  poly.push_back(meet);
  poly.insert(poly.end(), p2.rbegin(), p2.rend());
  const double from = std::arg(p2.front());
  double to = std::arg(p1.front());
  if (to <= from) to += kTwoPi;
  constexpr int kArcSteps = 512;
  for (int k = 0; k <= kArcSteps; ++k) poly.push_back(std::polar(big, from + (to - from) * k / kArcSteps));

  for (Complex q : {qa, qb}) {
    const double limit = tol * std::max(1.0, std::abs(q));
    for (size_t i = 0; i < poly.size(); ++i) {
      if (distance_to_segment(q, poly[i], poly[(i + 1) % poly.size()]) < limit) {
        throw InvalidArgument("query point lies on the separating curve");
      }
    }
  }
  return crossing_parity(qa, poly) != crossing_parity(qb, poly);
}

}  // namespace fatou
