#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <vector>

#include "billiards/common.hpp"

namespace billiards {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Univariate polynomial with exact big-rational coefficients, ascending
/// degree, trailing zeros stripped. The zero polynomial has an empty
/// coefficient list and degree -1.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(Rational constant);
  static RationalPoly from_coefficients(std::vector<Rational> ascending);
  static RationalPoly variable();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const;

  RationalPoly operator+(const RationalPoly& o) const;
  RationalPoly operator-(const RationalPoly& o) const;
  RationalPoly operator*(const RationalPoly& o) const;
  RationalPoly operator*(const Rational& s) const;
  RationalPoly operator-() const;
  bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

  RationalPoly pow(unsigned e) const;

  /// Exact quotient; throws degenerate_error if the division leaves a
  /// remainder (callers rely on divisibility guarantees).
  RationalPoly divide_exact(const RationalPoly& divisor) const;

  /// this(inner(X)).
  RationalPoly compose(const RationalPoly& inner) const;

  RationalPoly derivative() const;

  Rational evaluate(const Rational& x) const;
  std::complex<double> evaluate(const std::complex<double>& x) const;

  /// Coefficients rescaled to coprime integers with positive leading
  /// coefficient — the canonical exact form used for printing.
  std::vector<BigInt> integer_normalized() const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Determinant of a square matrix of polynomials by fraction-free elimination
/// (Bareiss). Every division performed is exact in the polynomial ring, so
/// intermediate entries never grow spurious denominators the way naive
/// Gaussian elimination would.
RationalPoly bareiss_determinant(std::vector<std::vector<RationalPoly>> m);

struct RootCluster {
  std::complex<double> value;
  int multiplicity = 1;
};

/// All complex roots via companion-matrix eigenvalues after max-coefficient
/// scaling, deduplicated at the given relative distance; multiplicities are
/// cluster sizes. Throws numerical_error if the eigensolver fails.
std::vector<RootCluster> clustered_roots(const RationalPoly& p, double rel_tol = tol::root_dedup);

}  // namespace billiards
