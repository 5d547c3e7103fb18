#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "fatou/sphere.hpp"

namespace fatou {

/// Dense univariate polynomial with complex coefficients, ascending degree.
///
/// Exact zero leading coefficients are stripped on construction, so the
/// zero polynomial has an empty coefficient vector and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs);

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial monomial(int k, Complex c = 1.0);
  /// (z - r)
  static Polynomial linear_factor(Complex r) { return Polynomial({-r, 1.0}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  std::span<const Complex> coefficients() const { return c_; }
  /// Coefficient of z^k; zero beyond the degree.
  Complex operator[](int k) const;
  Complex leading() const { return c_.empty() ? Complex(0.0) : c_.back(); }

  Complex operator()(Complex z) const;
  /// p(z) and p'(z) in one Horner pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex z) const;

  Polynomial derivative() const;

  /// z^n p(1/z) for n >= degree.
  Polynomial reversed(int n) const;

  /// Largest coefficient modulus.
  double max_abs_coefficient() const;

  /// Sum of |a_k| |z|^k: the size of p(z) before cancellation.
  double evaluation_scale(Complex z) const;

  /// Drops leading coefficients smaller than rel * max_abs_coefficient().
  Polynomial stripped(double rel) const;

  /// Quotient by (z - r), remainder discarded.
  Polynomial deflate(Complex r) const;

  Polynomial pow(int e) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Complex> c_;
};

/// Sum over k of a_k X^k Y^(n-k): the homogenization of p at degree n,
/// evaluated on polynomial arguments.
Polynomial homogeneous_substitute(const Polynomial& p, int n, const Polynomial& x,
                                  const Polynomial& y);

/// outer(inner_num / inner_den) as a quotient of polynomials.
std::pair<Polynomial, Polynomial> poly_compose(const Polynomial& outer, const Polynomial& inner_num,
                                               const Polynomial& inner_den);

struct Root {
  Complex value;
  int multiplicity = 1;
};

struct RootOptions {
  double tol = 1e-10;
  int max_iterations = 4000;
};

/// All roots of p with multiplicities (Aberth-Ehrlich iteration).
///
/// Iterates start on a circle whose radius is the positive root of
/// Cauchy's bound polynomial, so the result is a deterministic function of
/// the coefficients.  Iterates that sit within tol^(1/m) of each other and
/// are well separated from the rest are merged into one root of
/// multiplicity m, then polished with Newton on p^(m-1).  Roots at zero are
/// split off exactly first.
///
/// Throws InvalidArgument for degree < 1 and RootFinderError if the
/// iteration does not settle.
std::vector<Root> poly_roots(const Polynomial& p, const RootOptions& opts = {});

/// The raw Aberth iterates behind poly_roots, one per root counted with
/// multiplicity, before any clustering.
std::vector<Complex> poly_root_approximations(const Polynomial& p, const RootOptions& opts = {});

/// Newton ratio h(z)/h'(z) of some function whose zeros are sought; an
/// exact zero is reported as 0.
using NewtonRatioFn = std::function<Complex(Complex)>;

/// Simultaneous Aberth iteration for a function given pointwise.  Used to
/// sharpen roots of polynomials whose expanded coefficients are badly
/// conditioned but which can be evaluated stably some other way.
std::vector<Complex> aberth_refine(std::vector<Complex> start, const NewtonRatioFn& ratio,
                                   int max_iterations = 200);

/// Merges approximations closer than tol^(1/m) (and well separated from the
/// rest) into roots of multiplicity m, without polishing.
std::vector<Root> cluster_roots(std::span<const Complex> approx, double tol);

/// Product of (z - r)^m over the roots, times lead.
Polynomial from_roots(std::span<const Root> roots, Complex lead = 1.0);

}  // namespace fatou
