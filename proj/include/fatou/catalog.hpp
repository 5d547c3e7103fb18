#pragma once

#include <string>
#include <vector>

#include "fatou/rational_map.hpp"

namespace fatou::catalog {

/// N_d o p_d o M with p_d(z) = (d-1) z^d - d z^(d-1) + 1, M(z) = (z-1)/z and
/// N_d(z) = (1-d)(z-1)/z.  Infinity is a simple critical fixed point, 1 has
/// local degree d-1, 0 has local degree d, and 1 -> 0 -> 1-d -> 0.
RationalMap pseudo_basilica(int d);

/// (r / (d-1)) * pseudo_basilica(d).
RationalMap pseudo_rabbit(int d, Complex r);

/// Every r with g_r^3(0) = 0 and g_r(0) != 0, sorted by real then imaginary
/// part.  The condition is expanded as a polynomial in r by running the
/// orbit of 0 through the homogeneous form of g_r with r symbolic.
std::vector<Complex> pseudo_rabbit_roots(int d);

/// (z^3 - 3z + 2) / (1.5 z - 1), the degree-three map written out directly.
RationalMap displayed_cubic();

/// 3 (z-1)^3 (z+3) / (3 - 8z + 6z^2), written out directly.
RationalMap displayed_quartic();

struct PinchSolution {
  Complex a;
  Complex b;
  /// a z - b
  Polynomial denominator;
  RationalMap map;
  double first_derivative_at_zero;
  double second_derivative_at_zero;
  /// |g(g(0))|
  double return_residual;
};

/// Solves for g(z) = (z-1)^2 (z+2) / (a z - b) with g'(0) = g''(0) = 0 and
/// g(g(0)) = 0, where g(0) must be the simple zero of the numerator so that
/// the critical point 1 stays off the orbit of 0.  Throws ConvergenceError
/// when there is no solution or more than one.
PinchSolution solve_pinch_params();

/// Catalog selectors: pseudo-basilica:<d>, pseudo-rabbit:<d>:<root-index>,
/// paper-g, paper-degree4.  Throws InvalidArgument for unknown names.
RationalMap lookup(const std::string& name);

/// Names usable with lookup(), including a small range of degrees.
std::vector<std::string> names();

}  // namespace fatou::catalog
