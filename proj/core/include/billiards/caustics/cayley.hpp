#pragma once

#include <array>
#include <complex>

#include "billiards/caustics/rational.hpp"

namespace billiards {

/// k-th Taylor coefficient of sqrt(1 + t):
/// c_k = (-1)^(k+1) / (4^k (2k - 1)) * binomial(2k, k).
Rational sqrt_series_coeff(unsigned k);

/// Coefficient polynomial B_k(lambda) =
///   sum_{u+v+w=k} c_u c_v c_w / (a^u b^v) * (a-lambda)^u (b-lambda)^v,
/// the k-th coefficient of the series expansion of
///   sqrt((1 + (a-lambda)/a t)(1 + (b-lambda)/b t)(1 + t)).
RationalPoly cayley_b_coeff(unsigned k, const Rational& a, const Rational& b);

/// The first K+1 series coefficients computed independently, by multiplying
/// the three square-root series; used to cross-check cayley_b_coeff.
std::vector<RationalPoly> cayley_b_series(unsigned K, const Rational& a, const Rational& b);

/// The determinant polynomial whose roots lambda mark the confocal members
/// x^2/(a-lambda) + y^2/(b-lambda) = 1 inscribed in n-periodic orbits of the
/// billiard in x^2/a + y^2/b = 1:
///   odd n = 2m+1: det(B_{i+j})_{i,j=1..m};
///   even n = 2m:  det(B_{i+j+1})_{i,j=1..m-1}.
/// Computed exactly over the rational-polynomial ring.
RationalPoly caustic_polynomial(unsigned n, const Rational& a, const Rational& b);

/// Normalizer mu_n that clears denominators of caustic_polynomial:
///   odd n = 2m+1: (-1)^m 2^(m(2m+1)) (ab)^(m(m+1));
///   even n = 2m:  (1/m)(-1)^(m+1) 2^((m-1)(2m+1)) (ab)^((m-1)(m+1)).
Rational caustic_normalizer(unsigned n, const Rational& a, const Rational& b);

/// mu_n * caustic_polynomial: the integral form with polynomial coefficients
/// in (a, b).
RationalPoly normalized_caustic_polynomial(unsigned n, const Rational& a, const Rational& b);

/// Closed-form parameters of the two 3-caustics:
///   lambda_{+,-} = -ab/(a-b)^2 (a + b +- 2 sqrt(a^2 - ab + b^2)).
/// For an ellipse (a > b > 0) lambda_minus lies in (0, min(a,b)) and
/// lambda_plus is negative. Requires a != b.
struct ThreeCausticRoots {
  double lambda_plus;
  double lambda_minus;
};
ThreeCausticRoots three_caustics_closed_form(double a, double b);

/// Closed-form parameters of the three 4-caustics:
///   { ab/(b-a), ab/(a+b), ab/(a-b) }.
/// Requires a != b and a != -b.
std::array<double, 3> four_caustics_closed_form(double a, double b);

enum class CausticClass { ellipse, hyperbola, strictly_complex, excluded };

const char* to_string(CausticClass c);

/// Classify a root lambda of the caustic polynomial for base parameters
/// (a, b): excluded when lambda is 0, a, or b (degenerate family members);
/// non-real values are strictly complex; real values classify by the signs
/// of the member denominators a-lambda and b-lambda (both positive: ellipse;
/// opposite: hyperbola; both negative: strictly complex conic).
CausticClass classify_caustic_root(const std::complex<double>& lambda, double a, double b,
                                   double eps = 1e-9);

struct ClassifiedRoot {
  std::complex<double> value;
  int multiplicity = 1;
  CausticClass cls = CausticClass::excluded;
};

struct CausticReport {
  unsigned n = 0;
  Rational a, b;
  RationalPoly polynomial;  ///< normalized (integral) form
  std::vector<ClassifiedRoot> roots;
};

/// Full report: normalized polynomial, complex roots with multiplicities,
/// classification per root.
CausticReport n_caustics(unsigned n, const Rational& a, const Rational& b);

}  // namespace billiards
