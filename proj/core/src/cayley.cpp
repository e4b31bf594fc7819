#include "billiards/caustics/cayley.hpp"

#include <algorithm>

namespace billiards {

namespace {

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r(1);
  for (unsigned i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

Rational rational_pow(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Rational sqrt_series_coeff(unsigned k) {
  // (-1)^(k+1) / (4^k (2k-1)) * C(2k, k); the k = 0 sign and the (2k-1) = -1
  // denominator cancel to give c_0 = 1.
  BigInt num = binomial(2 * k, k);
  BigInt den = BigInt(1) << (2 * k);
  den *= (2 * static_cast<long>(k) - 1);
  // Construct by division: the two-argument constructor rejects negative
  // denominators instead of normalizing the sign.
  Rational c = Rational(num) / Rational(den);
  if (k % 2 == 0) c = -c;
  return c;
}

RationalPoly cayley_b_coeff(unsigned k, const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw degenerate_error("caustic coefficients require nonzero axes");
  const RationalPoly am = RationalPoly::from_coefficients({a, Rational(-1)});  // a - X
  const RationalPoly bm = RationalPoly::from_coefficients({b, Rational(-1)});  // b - X
  RationalPoly sum;
  for (unsigned u = 0; u <= k; ++u) {
    for (unsigned v = 0; u + v <= k; ++v) {
      unsigned w = k - u - v;
      Rational scalar = sqrt_series_coeff(u) * sqrt_series_coeff(v) * sqrt_series_coeff(w);
      scalar /= rational_pow(a, u) * rational_pow(b, v);
      sum = sum + am.pow(u) * bm.pow(v) * scalar;
    }
  }
  return sum;
}

std::vector<RationalPoly> cayley_b_series(unsigned K, const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw degenerate_error("caustic coefficients require nonzero axes");
  // sqrt(1 + alpha t) has t^k coefficient c_k alpha^k; multiply the three
  // series with alpha = (a-X)/a, (b-X)/b, 1, truncating at degree K.
  const RationalPoly alpha1 =
      RationalPoly::from_coefficients({Rational(1), Rational(-1) / a});  // (a-X)/a
  const RationalPoly alpha2 =
      RationalPoly::from_coefficients({Rational(1), Rational(-1) / b});  // (b-X)/b
  std::vector<RationalPoly> s1(K + 1), s2(K + 1), s3(K + 1);
  for (unsigned k = 0; k <= K; ++k) {
    Rational ck = sqrt_series_coeff(k);
    s1[k] = alpha1.pow(k) * ck;
    s2[k] = alpha2.pow(k) * ck;
    s3[k] = RationalPoly(ck);
  }
  auto convolve = [K](const std::vector<RationalPoly>& x, const std::vector<RationalPoly>& y) {
    std::vector<RationalPoly> r(K + 1);
    for (unsigned i = 0; i <= K; ++i)
      for (unsigned j = 0; i + j <= K; ++j) r[i + j] = r[i + j] + x[i] * y[j];
    return r;
  };
  return convolve(convolve(s1, s2), s3);
}

RationalPoly caustic_polynomial(unsigned n, const Rational& a, const Rational& b) {
  if (n < 3) throw geometry_error("caustic polynomial requires period n >= 3");
  if (a == 0 || b == 0) throw degenerate_error("caustic polynomial requires nonzero axes");

  std::vector<RationalPoly> B(n);  // B_0 .. B_{n-1}
  for (unsigned k = 0; k < n; ++k) B[k] = cayley_b_coeff(k, a, b);

  std::vector<std::vector<RationalPoly>> mat;
  if (n % 2 == 1) {
    const unsigned m = (n - 1) / 2;
    mat.assign(m, std::vector<RationalPoly>(m));
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < m; ++j) mat[i][j] = B[i + j + 2];
  } else {
    const unsigned m = n / 2;
    mat.assign(m - 1, std::vector<RationalPoly>(m - 1));
    for (unsigned i = 0; i + 1 < m; ++i)
      for (unsigned j = 0; j + 1 < m; ++j) mat[i][j] = B[i + j + 3];
  }
  return bareiss_determinant(std::move(mat));
}

Rational caustic_normalizer(unsigned n, const Rational& a, const Rational& b) {
  if (n < 3) throw geometry_error("caustic normalizer requires period n >= 3");
  const Rational ab = a * b;
  if (n % 2 == 1) {
    const unsigned m = (n - 1) / 2;
    Rational mu = rational_pow(Rational(2), m * (2 * m + 1)) * rational_pow(ab, m * (m + 1));
    if (m % 2 == 1) mu = -mu;
    return mu;
  }
  const unsigned m = n / 2;
  Rational mu = rational_pow(Rational(2), (m - 1) * (2 * m + 1)) * rational_pow(ab, (m - 1) * (m + 1));
  mu /= Rational(static_cast<long>(m));
  if (m % 2 == 0) mu = -mu;
  return mu;
}

RationalPoly normalized_caustic_polynomial(unsigned n, const Rational& a, const Rational& b) {
  return caustic_polynomial(n, a, b) * caustic_normalizer(n, a, b);
}

ThreeCausticRoots three_caustics_closed_form(double a, double b) {
  if (a == b) throw degenerate_error("three-caustic closed form requires a != b");
  const double prefactor = -a * b / ((a - b) * (a - b));
  const double s = 2.0 * std::sqrt(a * a - a * b + b * b);
  return {prefactor * (a + b + s), prefactor * (a + b - s)};
}

std::array<double, 3> four_caustics_closed_form(double a, double b) {
  if (a == b || a == -b) throw degenerate_error("four-caustic closed form requires a != +-b");
  return {a * b / (b - a), a * b / (a + b), a * b / (a - b)};
}

const char* to_string(CausticClass c) {
  switch (c) {
    case CausticClass::ellipse: return "ellipse";
    case CausticClass::hyperbola: return "hyperbola";
    case CausticClass::strictly_complex: return "strictly-complex";
    case CausticClass::excluded: return "excluded";
  }
  return "unknown";
}

CausticClass classify_caustic_root(const std::complex<double>& lambda, double a, double b, double eps) {
  if (std::abs(lambda.imag()) > eps * (1.0 + std::abs(lambda))) return CausticClass::strictly_complex;
  const double l = lambda.real();
  for (double excluded : {0.0, a, b})
    if (std::abs(l - excluded) <= eps * (1.0 + std::abs(excluded))) return CausticClass::excluded;
  const double da = a - l, db = b - l;
  if (da > 0.0 && db > 0.0) return CausticClass::ellipse;
  if (da * db < 0.0) return CausticClass::hyperbola;
  return CausticClass::strictly_complex;
}

CausticReport n_caustics(unsigned n, const Rational& a, const Rational& b) {
  CausticReport report;
  report.n = n;
  report.a = a;
  report.b = b;
  report.polynomial = normalized_caustic_polynomial(n, a, b);
  const double ad = a.convert_to<double>(), bd = b.convert_to<double>();
  for (const auto& cluster : clustered_roots(report.polynomial)) {
    ClassifiedRoot root;
    root.value = cluster.value;
    root.multiplicity = cluster.multiplicity;
    root.cls = classify_caustic_root(cluster.value, ad, bd);
    report.roots.push_back(root);
  }
  std::sort(report.roots.begin(), report.roots.end(), [](const ClassifiedRoot& x, const ClassifiedRoot& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return report;
}

}  // namespace billiards
