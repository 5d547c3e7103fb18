#include "fatou/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fatou/error.hpp"

namespace fatou {

SpherePoint::SpherePoint(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    z_ = 1.0;
    w_ = 0.0;
    return;
  }
  const double a = std::abs(z);
  if (a <= 1.0) {
    z_ = z;
    w_ = 1.0;
  } else {
    z_ = z / a;
    w_ = 1.0 / a;
  }
}

SpherePoint SpherePoint::homogeneous(Complex z, Complex w) {
  const double s = std::max(std::abs(z), std::abs(w));
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw InvalidArgument("homogeneous coordinates must be finite and not both zero");
  }
  SpherePoint p;
  p.z_ = z / s;
  p.w_ = w / s;
  return p;
}

Complex SpherePoint::finite_value() const {
  if (is_infinite()) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  return z_ / w_;
}

Complex SpherePoint::value_at_infinity_chart() const {
  if (z_ == Complex(0.0)) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  return w_ / z_;
}

std::string SpherePoint::to_string() const {
  if (is_infinite()) return "inf";
  std::ostringstream os;
  os.precision(17);
  const Complex v = finite_value();
  os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

double chordal(const SpherePoint& a, const SpherePoint& b) {
  // |z1 w2 - z2 w1| / (|(z1,w1)| |(z2,w2)|) is half the chordal distance.
  const Complex cross = a.z() * b.w() - b.z() * a.w();
  const double na = std::sqrt(std::norm(a.z()) + std::norm(a.w()));
  const double nb = std::sqrt(std::norm(b.z()) + std::norm(b.w()));
  return 2.0 * std::abs(cross) / (na * nb);
}

double chordal(Complex a, Complex b) { return chordal(SpherePoint(a), SpherePoint(b)); }

}  // namespace fatou
