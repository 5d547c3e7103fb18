#include "fatou/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fatou/error.hpp"

namespace fatou {

namespace {

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double segment_distance(Complex q, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(q - a);
  const double s = std::clamp(((q - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(q - (a + s * ab));
}

int orient(Complex a, Complex b, Complex c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool on_segment(Complex a, Complex b, Complex p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

PolyCurve circle(Complex center, double radius, int n, bool ccw) {
  if (n < 3) throw InvalidArgument("circle needs at least 3 vertices");
  if (!(radius > 0.0)) throw InvalidArgument("circle radius must be positive");
  PolyCurve c;
  c.vertices.reserve(static_cast<size_t>(n));
  const double dir = ccw ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    c.vertices.push_back(center + std::polar(radius, dir * 2.0 * std::numbers::pi * k / n));
  }
  return c;
}

int winding_number(const PolyCurve& c, Complex q) {
  const auto& v = c.vertices;
  int w = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    const Complex a = v[i];
    const Complex b = v[(i + 1) % v.size()];
    if (a.imag() <= q.imag()) {
      if (b.imag() > q.imag() && cross(b - a, q - a) > 0.0) ++w;
    } else if (b.imag() <= q.imag() && cross(b - a, q - a) < 0.0) {
      --w;
    }
  }
  return w;
}

double distance_to_curve(const PolyCurve& c, Complex q) {
  const auto& v = c.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < v.size(); ++i) best = std::min(best, segment_distance(q, v[i], v[(i + 1) % v.size()]));
  return best;
}

double signed_area2(const PolyCurve& c) {
  const auto& v = c.vertices;
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return s;
}

bool is_simple(const PolyCurve& c) {
  const auto& v = c.vertices;
  const size_t n = v.size();
  if (n < 3) return false;
  // Sweep over edges sorted by their lower x; only overlapping x ranges can meet.
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  auto lo = [&](size_t i) { return std::min(v[i].real(), v[(i + 1) % n].real()); };
  auto hi = [&](size_t i) { return std::max(v[i].real(), v[(i + 1) % n].real()); };
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return lo(a) < lo(b); });
  for (size_t x = 0; x < n; ++x) {
    const size_t i = order[x];
    for (size_t y = x + 1; y < n && lo(order[y]) <= hi(i); ++y) {
      const size_t j = order[y];
      const bool adjacent = (i + 1) % n == j || (j + 1) % n == i;
      if (adjacent) {
        if (v[i] == v[(i + 1) % n] || v[j] == v[(j + 1) % n]) return false;
        continue;
      }
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n])) return false;
    }
  }
  return true;
}

double min_vertex_spacing(const PolyCurve& c) {
  const auto& v = c.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < v.size(); ++i) best = std::min(best, std::abs(v[(i + 1) % v.size()] - v[i]));
  return best;
}

}  // namespace fatou
