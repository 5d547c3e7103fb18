#include "fatou/moebius.hpp"

#include <algorithm>
#include <cmath>

#include "fatou/error.hpp"

namespace fatou {

namespace {
constexpr double kDeterminantFloor = 1e-12;
}

MoebiusTransform::MoebiusTransform(Complex a, Complex b, Complex c, Complex d)
    : a_(a), b_(b), c_(c), d_(d) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(std::abs(determinant()) > kDeterminantFloor * scale * scale)) {
    throw InvalidArgument("Moebius transform is singular");
  }
}

MoebiusTransform MoebiusTransform::compose(const MoebiusTransform& o) const {
  return {a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
          c_ * o.b_ + d_ * o.d_};
}

SpherePoint MoebiusTransform::operator()(const SpherePoint& p) const {
  return SpherePoint::homogeneous(a_ * p.z() + b_ * p.w(), c_ * p.z() + d_ * p.w());
}

std::pair<Polynomial, Polynomial> moebius_conjugate(const Polynomial& f_num, const Polynomial& f_den,
                                                    const MoebiusTransform& m) {
  if (f_den.is_zero()) throw InvalidArgument("moebius_conjugate: zero denominator");
  const int n = std::max(f_num.degree(), f_den.degree());
  const MoebiusTransform inv = m.inverse();
  // f o m^-1 homogenized: substitute X = d z - b, Y = -c z + a.
  const Polynomial x({inv.b(), inv.a()});
  const Polynomial y({inv.d(), inv.c()});
  const Polynomial p = homogeneous_substitute(f_num, n, x, y);
  const Polynomial q = homogeneous_substitute(f_den, n, x, y);
  return {m.a() * p + m.b() * q, m.c() * p + m.d() * q};
}

}  // namespace fatou
