#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <billiards/caustics/cayley.hpp>
#include <billiards/caustics/poncelet.hpp>
#include <billiards/caustics/rational.hpp>
#include <billiards/caustics/tangency.hpp>
#include <billiards/projcore/quadric.hpp>
#include <billiards/reflect/reflection.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

using namespace billiards;
using C64 = std::complex<double>;

namespace {

RationalPoly poly_from_ints(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return RationalPoly::from_coefficients(std::move(c));
}

std::vector<double> sorted_real_roots(const RationalPoly& p) {
  std::vector<double> out;
  for (const auto& r : clustered_roots(p))
    if (std::abs(r.value.imag()) <= 1e-9 * (1.0 + std::abs(r.value.real())))
      out.push_back(r.value.real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("rational polynomial arithmetic, composition and exact division") {
  RationalPoly X = RationalPoly::variable();
  RationalPoly p = (X * X + X * Rational(2) + RationalPoly(Rational(1)));  // (X+1)^2
  RationalPoly q = X + RationalPoly(Rational(1));
  CHECK(p.divide_exact(q) == q);
  CHECK_THROWS_AS((X * X + RationalPoly(Rational(1))).divide_exact(q), degenerate_error);

  RationalPoly comp = p.compose(X * X);  // (X^2+1)^2
  CHECK(comp.degree() == 4);
  CHECK(comp.evaluate(Rational(2)) == Rational(25));

  CHECK(p.derivative() == q * Rational(2));
  CHECK(std::abs(p.evaluate(C64(0.0, 1.0)) - C64(0.0, 2.0)) < 1e-15);  // (i+1)^2 = 2i

  RationalPoly zero;
  CHECK(zero.is_zero());
  CHECK(zero.degree() == -1);
  CHECK((p - p).is_zero());
}

TEST_CASE("integer normalization produces coprime coefficients with positive leading term") {
  auto p = RationalPoly::from_coefficients({Rational(1, 2), Rational(-3, 4), Rational(-1, 4)});
  auto ints = p.integer_normalized();
  REQUIRE(ints.size() == 3);
  CHECK(ints[0] == BigInt(-2));
  CHECK(ints[1] == BigInt(3));
  CHECK(ints[2] == BigInt(1));
}

TEST_CASE("fraction-free determinant of a polynomial matrix") {
  RationalPoly X = RationalPoly::variable();
  RationalPoly one{Rational(1)};
  // det [[X, 1], [1, X]] = X^2 - 1
  RationalPoly det = bareiss_determinant({{X, one}, {one, X}});
  CHECK(det == poly_from_ints({-1, 0, 1}));
  // det of a singular matrix is the zero polynomial
  RationalPoly det0 = bareiss_determinant({{X, X}, {X, X}});
  CHECK(det0.is_zero());
}

TEST_CASE("root clustering merges multiple roots and keeps multiplicities") {
  RationalPoly X = RationalPoly::variable();
  RationalPoly one{Rational(1)};
  RationalPoly three{Rational(3)};
  RationalPoly p = (X - one) * (X - one) * (X - three);
  auto roots = clustered_roots(p);
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(),
            [](const RootCluster& a, const RootCluster& b) { return a.value.real() < b.value.real(); });
  CHECK(roots[0].value.real() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(roots[0].multiplicity == 2);
  CHECK(roots[1].value.real() == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(roots[1].multiplicity == 1);
}

TEST_CASE("square-root series coefficients satisfy the defining identity") {
  CHECK(sqrt_series_coeff(0) == Rational(1));
  CHECK(sqrt_series_coeff(1) == Rational(1, 2));
  CHECK(sqrt_series_coeff(2) == Rational(-1, 8));
  CHECK(sqrt_series_coeff(3) == Rational(1, 16));
  // the square of the truncated series is 1 + t up to the truncation order
  const unsigned K = 12;
  RationalPoly s;
  RationalPoly X = RationalPoly::variable();
  for (unsigned k = 0; k <= K; ++k) s = s + X.pow(k) * sqrt_series_coeff(k);
  RationalPoly sq = s * s;
  CHECK(sq.coeff(0) == Rational(1));
  CHECK(sq.coeff(1) == Rational(1));
  for (unsigned k = 2; k <= K; ++k) CHECK(sq.coeff(k) == Rational(0));
}

TEST_CASE("series coefficient polynomials agree with the direct triple-product expansion") {
  Rational a(2), b(1);
  auto series = cayley_b_series(6, a, b);
  REQUIRE(series.size() == 7);
  for (unsigned k = 0; k <= 6; ++k) CHECK(series[k] == cayley_b_coeff(k, a, b));
}

TEST_CASE("normalized caustic polynomial at (2, 1) for three bounces is X^2 + 12X - 12") {
  RationalPoly p = normalized_caustic_polynomial(3, Rational(2), Rational(1));
  auto ints = p.integer_normalized();
  REQUIRE(ints.size() == 3);
  CHECK(ints[0] == BigInt(-12));
  CHECK(ints[1] == BigInt(12));
  CHECK(ints[2] == BigInt(1));
}

TEST_CASE("normalized caustic polynomial at (2, 1) for five bounces has the frozen coefficients") {
  RationalPoly p = normalized_caustic_polynomial(5, Rational(2), Rational(1));
  auto ints = p.integer_normalized();
  REQUIRE(ints.size() == 7);
  const long expect[] = {320, -960, 368, 864, -1012, 420, 1};
  for (size_t i = 0; i < 7; ++i) CHECK(ints[i] == BigInt(expect[i]));
}

TEST_CASE("caustic polynomial degrees follow the quarter-square laws") {
  Rational a(7, 3), b(5, 2);
  CHECK(normalized_caustic_polynomial(3, a, b).degree() == 2);
  CHECK(normalized_caustic_polynomial(4, a, b).degree() == 3);
  CHECK(normalized_caustic_polynomial(5, a, b).degree() == 6);
  CHECK(normalized_caustic_polynomial(6, a, b).degree() == 8);
  // circle: equal parameters halve the degrees
  Rational c(3, 2);
  CHECK(normalized_caustic_polynomial(3, c, c).degree() == 1);
  CHECK(normalized_caustic_polynomial(4, c, c).degree() == 1);
  CHECK(normalized_caustic_polynomial(5, c, c).degree() == 2);
  CHECK(normalized_caustic_polynomial(6, c, c).degree() == 2);
}

TEST_CASE("closed-form three-bounce parameters match the polynomial roots") {
  double a = 2.0, b = 1.0;
  auto closed = three_caustics_closed_form(a, b);
  CHECK(closed.lambda_plus == doctest::Approx(-12.928203230275509).epsilon(1e-14));
  CHECK(closed.lambda_minus == doctest::Approx(0.9282032302755092).epsilon(1e-14));

  auto roots = sorted_real_roots(normalized_caustic_polynomial(3, Rational(2), Rational(1)));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(closed.lambda_plus).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(closed.lambda_minus).epsilon(1e-12));
}

TEST_CASE("closed-form four-bounce parameters match the polynomial roots") {
  auto closed = four_caustics_closed_form(3.0, 1.0);
  std::sort(closed.begin(), closed.end());
  CHECK(closed[0] == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(closed[1] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(closed[2] == doctest::Approx(1.5).epsilon(1e-14));

  auto roots = sorted_real_roots(normalized_caustic_polynomial(4, Rational(3), Rational(1)));
  REQUIRE(roots.size() == 3);
  for (size_t i = 0; i < 3; ++i) CHECK(roots[i] == doctest::Approx(closed[i]).epsilon(1e-12));
}

TEST_CASE("caustic root classification covers all regimes") {
  // ellipse, both denominators positive
  CHECK(classify_caustic_root(C64(0.5), 2.0, 1.0) == CausticClass::ellipse);
  // ellipse of negative parameter (outer member)
  CHECK(classify_caustic_root(C64(-12.9), 2.0, 1.0) == CausticClass::ellipse);
  // hyperbola, first sign pattern (a - l > 0 > b - l)
  CHECK(classify_caustic_root(C64(1.5), 2.0, 1.0) == CausticClass::hyperbola);
  // hyperbola, second sign pattern (a - l < 0 < b - l)
  CHECK(classify_caustic_root(C64(2.0), 1.0, 3.0) == CausticClass::hyperbola);
  // both denominators negative
  CHECK(classify_caustic_root(C64(6.0), 3.0, 2.0) == CausticClass::strictly_complex);
  // non-real parameter
  CHECK(classify_caustic_root(C64(0.5, 0.5), 2.0, 1.0) == CausticClass::strictly_complex);
  // excluded parameters 0, a, b
  CHECK(classify_caustic_root(C64(0.0), 2.0, 1.0) == CausticClass::excluded);
  CHECK(classify_caustic_root(C64(2.0), 2.0, 1.0) == CausticClass::excluded);
  CHECK(classify_caustic_root(C64(1.0), 2.0, 1.0) == CausticClass::excluded);
}

TEST_CASE("the degenerate parameters 0, a, b are generically not roots") {
  // A generic axis pair: the special locus a = 2b (where the parameter a
  // genuinely becomes a four-bounce root, flagged excluded) is avoided.
  Rational a(7, 3), b(5, 2);
  for (unsigned n = 3; n <= 6; ++n) {
    RationalPoly p = normalized_caustic_polynomial(n, a, b);
    CHECK(p.evaluate(Rational(0)) != Rational(0));
    CHECK(p.evaluate(a) != Rational(0));
    CHECK(p.evaluate(b) != Rational(0));
  }
  // On that special locus the value a is a root and must still be reported.
  RationalPoly special = normalized_caustic_polynomial(4, Rational(2), Rational(1));
  CHECK(special.evaluate(Rational(2)) == Rational(0));
}

TEST_CASE("full caustic report classifies roots consistently with the polynomial degree") {
  auto report = n_caustics(4, Rational(3), Rational(1));
  CHECK(report.n == 4);
  CHECK(report.polynomial.degree() == 3);
  int total_multiplicity = 0;
  for (const auto& r : report.roots) total_multiplicity += r.multiplicity;
  CHECK(total_multiplicity == 3);
  int ellipses = 0, hyperbolas = 0;
  for (const auto& r : report.roots) {
    if (r.cls == CausticClass::ellipse) ++ellipses;
    if (r.cls == CausticClass::hyperbola) ++hyperbolas;
  }
  CHECK(ellipses == 2);
  CHECK(hyperbolas == 1);
}

TEST_CASE("Joachimsthal value equals the inscribed-circle parameter on the round table") {
  // chord of the unit circle from angle 0 to alpha: a b P = (1 - cos alpha) / 2
  double alpha = 1.1;
  Eigen::Vector2d p(1.0, 0.0);
  Eigen::Vector2d q(std::cos(alpha), std::sin(alpha));
  Eigen::Vector2d v = q - p;
  double P = joachimsthal_invariant(p, v, 1.0, 1.0);
  CHECK(P == doctest::Approx((1.0 - std::cos(alpha)) / 2.0).epsilon(1e-12));
  // and the chord line is tangent to the member at that parameter
  HVecR chord = join(hpoint2(p.x(), p.y()), hpoint2(q.x(), q.y()));
  CHECK(planar_tangency_parameter(chord, 1.0, 1.0) == doctest::Approx(P).epsilon(1e-12));
}

TEST_CASE("Joachimsthal value is invariant under direction scaling and complex extension") {
  double a = 2.0, b = 1.0;
  Eigen::Vector2d p(std::sqrt(a) * std::cos(0.4), std::sqrt(b) * std::sin(0.4));
  Eigen::Vector2d v(-0.8, 0.5);
  double P = joachimsthal_invariant(p, v, a, b);
  CHECK(joachimsthal_invariant(p, Eigen::Vector2d(3.7 * v), a, b) ==
        doctest::Approx(P).epsilon(1e-13));
  C64 Pc = joachimsthal_invariant(p.cast<C64>().eval(), v.cast<C64>().eval(), C64(a), C64(b));
  CHECK(std::abs(Pc - C64(P)) < 1e-12);
  // isotropic directions are rejected
  Eigen::Vector2cd iso(C64(1.0), C64(0.0, 1.0));
  CHECK_THROWS_AS(joachimsthal_invariant(p.cast<C64>().eval(), iso, C64(a), C64(b)),
                  degenerate_error);
  // off-conic points are rejected
  CHECK_THROWS_AS(joachimsthal_invariant(Eigen::Vector2d(5.0, 5.0), v, a, b), geometry_error);
}

TEST_CASE("tangency parameter of a horizontal line against the planar confocal family") {
  // y = c is tangent to the member with b - lambda = c^2
  double a = 2.0, b = 1.0, c = 0.6;
  HVecR line = hvec3<double>(0.0, 1.0, -c);
  CHECK(planar_tangency_parameter(line, a, b) == doctest::Approx(b - c * c).epsilon(1e-12));
}

TEST_CASE("generic tangency parameters agree with the planar closed form in the plane") {
  auto fam = ConfocalFamily::euclidean({2.0, 1.0});
  Eigen::VectorXd P(2), V(2);
  P << 0.3, 0.4;
  V << 1.0, -0.7;
  auto params = tangency_parameters(fam, P, V);
  REQUIRE(params.size() == 1);
  HVecR line = join(hpoint2(P[0], P[1]), hpoint2(P[0] + V[0], P[1] + V[1]));
  CHECK(params[0] == doctest::Approx(planar_tangency_parameter(line, 2.0, 1.0)).epsilon(1e-10));

  Eigen::VectorXd tp = tangency_point(fam, P, V, params[0]);
  // the tangency point is on the member and on the line
  double member_value = tp[0] * tp[0] / fam.denom(0, params[0]) + tp[1] * tp[1] / fam.denom(1, params[0]);
  CHECK(member_value == doctest::Approx(1.0).epsilon(1e-9));
  double cross = (tp[0] - P[0]) * V[1] - (tp[1] - P[1]) * V[0];
  CHECK(std::abs(cross) < 1e-9);
}

TEST_CASE("a spatial line touches two members of the confocal family of an ellipsoid") {
  auto fam = ConfocalFamily::euclidean({3.0, 2.0, 1.0});
  Eigen::VectorXd P(3), V(3);
  P << 0.2, -0.3, 0.4;
  V << 1.0, 0.8, -0.5;
  auto params = tangency_parameters(fam, P, V);
  REQUIRE(params.size() == 2);
  CHECK(params[0] < params[1]);
  for (double lambda : params) {
    Eigen::VectorXd tp = tangency_point(fam, P, V, lambda);
    double member_value = 0.0;
    for (int j = 0; j < 3; ++j) member_value += tp[j] * tp[j] / fam.denom(static_cast<size_t>(j), lambda);
    CHECK(member_value == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("tangent-line dynamics close exactly at the caustic parameters") {
  QuadricR outer = axis_conic(2.0, 1.0);
  auto fam = ConfocalFamily::euclidean({2.0, 1.0});

  // the inner three-bounce member closes with period three
  auto r3 = poncelet_closure(outer, fam.member(0.9282032302755092), 3);
  CHECK(r3.closes);
  CHECK(r3.all_or_none);
  CHECK(r3.max_residual < 1e-8);
  CHECK_FALSE(r3.used_complex_path);
  CHECK(r3.general_position);

  // the four-bounce member 2/3 closes with period four
  auto r4 = poncelet_closure(outer, fam.member(2.0 / 3.0), 4);
  CHECK(r4.closes);
  CHECK(r4.all_or_none);
  CHECK(r4.max_residual < 1e-8);

  // a generic member does not close
  auto bad = poncelet_closure(outer, fam.member(0.5), 3);
  CHECK_FALSE(bad.closes);
  CHECK(bad.all_or_none);
  CHECK(bad.max_residual > 1e-3);
}

TEST_CASE("tangent-line dynamics continue over the complex field for outer members") {
  QuadricR outer = axis_conic(2.0, 1.0);
  auto fam = ConfocalFamily::euclidean({2.0, 1.0});
  // the outer three-bounce member surrounds the table: no real tangents exist
  auto r = poncelet_closure(outer, fam.member(-12.928203230275509), 3);
  CHECK(r.closes);
  CHECK(r.all_or_none);
  CHECK(r.used_complex_path);
  CHECK(r.max_residual < 1e-8);
}

TEST_CASE("rotation numbers of real closed runs are rational with the expected denominator") {
  QuadricR outer = axis_conic(2.0, 1.0);
  auto fam = ConfocalFamily::euclidean({2.0, 1.0});
  auto r = poncelet_closure(outer, fam.member(0.9282032302755092), 3);
  bool saw_third = false;
  for (double w : r.rotation_numbers)
    if (std::isfinite(w) && std::abs(w - 1.0 / 3.0) < 1e-6) saw_third = true;
  CHECK(saw_third);
}

TEST_CASE("explicit tangent polygon has its vertices on the outer conic") {
  QuadricR outer = axis_conic(2.0, 1.0);
  auto fam = ConfocalFamily::euclidean({2.0, 1.0});
  Eigen::Vector2d start(std::sqrt(2.0), 0.0);
  auto poly = poncelet_polygon(outer, fam.member(2.0 / 3.0), start, 4);
  REQUIRE(poly.size() == 4);
  for (const auto& v : poly) CHECK(outer.contains(hpoint2(v.x(), v.y()), 1e-8));
  // period-four closure: the follow-up vertex equals the start
  auto poly5 = poncelet_polygon(outer, fam.member(2.0 / 3.0), start, 5);
  CHECK((poly5[4] - start).norm() < 1e-7);
}

TEST_CASE("points sampled on a conic satisfy its equation") {
  QuadricR conic = axis_conic(3.0, 1.5);
  for (double th = 0.1; th < 6.0; th += 0.7) {
    HVecR p = conic_point_at(conic, th);
    CHECK(conic.contains(p, 1e-9));
  }
}

TEST_CASE("equal invariants along a chord pair are recognized as same line or mirror images") {
  C64 a(2.0), b(1.0);
  Eigen::Vector2cd p(std::sqrt(2.0) * std::cos(0.7), std::sin(0.7));
  Eigen::Vector2cd v(C64(1.0), C64(-0.4));
  CHECK(converse_invariant_check(p, v, Eigen::Vector2cd(C64(-2.0) * v), a, b) ==
        ChordRelation::same_line);
  // the tangent-reflected direction carries the same invariant and is a mirror image
  HVecR grad = hvec3<double>(2.0 * p.x().real() / 2.0, 2.0 * p.y().real() / 1.0, 0.0);
  Eigen::Vector2cd tangent(C64(-grad[1]), C64(grad[0]));
  Eigen::Vector2cd reflected =
      complex_reflect_direction(tangent, v);
  CHECK(converse_invariant_check(p, v, reflected, a, b) == ChordRelation::mirror_pair);
}
