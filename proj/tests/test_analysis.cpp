#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <billiards/analysis/analysis.hpp>
#include <billiards/caustics/tangency.hpp>
#include <billiards/projcore/quadric.hpp>
#include <billiards/reflect/boundary.hpp>

#include <cmath>
#include <random>

using namespace billiards;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

// Normal line of the ellipse x^2/a + y^2/b = 1 at a boundary point.
HVecR normal_line_at(double a, double b, const Eigen::Vector2d& p) {
  Eigen::Vector2d g(2.0 * p.x() / a, 2.0 * p.y() / b);
  return join(hpoint2(p.x(), p.y()), hpoint2(p.x() + g.x(), p.y() + g.y()));
}

// Tangent line of the same ellipse at a boundary point (the polar line).
HVecR tangent_line_at(double a, double b, const Eigen::Vector2d& p) {
  return hvec3<double>(p.x() / a, p.y() / b, -1.0);
}

}  // namespace

TEST_CASE("circumcenter of a right triangle is the midpoint of its hypotenuse") {
  Eigen::Vector2d c = circumcenter({0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0});
  CHECK(c.x() == doctest::Approx(1.0));
  CHECK(c.y() == doctest::Approx(1.0));
  CHECK_THROWS_AS(circumcenter({0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}), degenerate_error);
}

TEST_CASE("triangle orbits close and stay on the table") {
  double a = 2.0, b = 1.0;
  QuadricR table = axis_conic(a, b);
  auto family = triangular_orbit_family(a, b, 24);
  REQUIRE(family.size() == 24);
  for (const auto& orbit : family) {
    CHECK(orbit.closure_residual < 1e-9);
    for (const auto& v : orbit.vertices) CHECK(table.contains(hpoint2(v.x(), v.y()), 1e-8));
  }
}

TEST_CASE("triangle orbits of the round table touch the inner circle of three-quarter parameter") {
  auto family = triangular_orbit_family(1.0, 1.0, 12);
  for (const auto& orbit : family) {
    for (int j = 0; j < 3; ++j) {
      const Eigen::Vector2d& p = orbit.vertices[static_cast<size_t>(j)];
      const Eigen::Vector2d& q = orbit.vertices[static_cast<size_t>((j + 1) % 3)];
      HVecR chord = join(hpoint2(p.x(), p.y()), hpoint2(q.x(), q.y()));
      CHECK(planar_tangency_parameter(chord, 1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-9));
    }
  }
}

TEST_CASE("conic fitting recognizes ellipses, hyperbolas, parabolas, and point clouds") {
  std::vector<Eigen::Vector2d> pts;
  for (double t = 0.0; t < 6.28; t += 0.15)
    pts.emplace_back(1.3 * std::cos(t) + 0.2, 0.7 * std::sin(t) - 0.1);
  ConicFit efit = fit_conic(pts);
  CHECK(efit.cls == FittedConicClass::ellipse);
  CHECK(efit.residual < 1e-12);

  pts.clear();
  for (double t = -1.5; t < 1.5; t += 0.1) {
    pts.emplace_back(std::cosh(t), 0.8 * std::sinh(t));
    pts.emplace_back(-std::cosh(t), 0.8 * std::sinh(t));
  }
  CHECK(fit_conic(pts).cls == FittedConicClass::hyperbola);

  pts.clear();
  for (double t = -2.0; t < 2.0; t += 0.1) pts.emplace_back(t, 0.5 * t * t);
  CHECK(fit_conic(pts).cls == FittedConicClass::parabola);

  pts.assign(40, Eigen::Vector2d(0.35, -0.2));
  CHECK(fit_conic(pts).cls == FittedConicClass::point);
}

TEST_CASE("circumcenters of the triangle-orbit family trace a small ellipse") {
  auto locus = circumcenter_locus(2.0, 1.0, 200);
  REQUIRE(locus.centers.size() == 200);
  CHECK(locus.fit.cls == FittedConicClass::ellipse);
  CHECK(locus.fit.residual < 1e-8);
  // the locus inherits both axis symmetries: the fitted conic has no cross term
  CHECK(std::abs(locus.fit.coefficients[1]) < 1e-8);
}

TEST_CASE("circumcenters collapse to the center for the round table") {
  auto locus = circumcenter_locus(1.5, 1.5, 64);
  CHECK(locus.fit.cls == FittedConicClass::point);
  for (const auto& c : locus.centers) CHECK(c.norm() < 1e-9);
}

TEST_CASE("bisector hyperplanes at polygon vertices average the unit chord directions") {
  std::vector<Eigen::VectorXd> poly{vec2(0.0, 0.0), vec2(4.0, 0.0), vec2(0.0, 3.0)};
  auto bis = classical_bisector_hyperplanes(poly);
  REQUIRE(bis.size() == 3);
  // at the right-angle vertex the bisector points along the diagonal (1,1)
  Eigen::Vector2d d0(bis[0].direction[0], bis[0].direction[1]);
  CHECK(std::abs(std::abs(d0.dot(Eigen::Vector2d(1, 1).normalized())) - 1.0) < 1e-12);
  for (const auto& b : bis) {
    CHECK(b.direction.norm() == doctest::Approx(1.0));
    CHECK((b.direction - b.normal).norm() < 1e-12);
  }
}

TEST_CASE("conjugate support lines of a billiard orbit recover the boundary tangents") {
  double a = 2.0, b = 1.0;
  auto family = triangular_orbit_family(a, b, 16);
  for (const auto& orbit : family) {
    std::vector<Eigen::Vector2d> poly(orbit.vertices.begin(), orbit.vertices.end());
    std::vector<HVecR> frames, tangents;
    for (const auto& p : poly) {
      frames.push_back(normal_line_at(a, b, p));
      tangents.push_back(tangent_line_at(a, b, p));
    }
    auto support = conjugate_support_lines(poly, frames);
    REQUIRE(support.size() == 3);
    for (size_t j = 0; j < 3; ++j) CHECK(proj_distance(support[j], tangents[j]) < 1e-9);
    CHECK(birkhoff_tangency_defect(poly, frames, tangents) < 1e-9);
  }
}

TEST_CASE("perturbed frames or tangents break the support-line identity visibly") {
  double a = 2.0, b = 1.0;
  auto orbit = triangular_orbit_family(a, b, 16)[3];
  std::vector<Eigen::Vector2d> poly(orbit.vertices.begin(), orbit.vertices.end());
  std::vector<HVecR> frames, tangents, bad_tangents, bad_frames;
  for (const auto& p : poly) {
    frames.push_back(normal_line_at(a, b, p));
    tangents.push_back(tangent_line_at(a, b, p));
    bad_tangents.push_back(tangent_line_at(a, b, p) + hvec3<double>(0.01, -0.02, 0.015));
    // frames through a skewed center are no longer the orbit's normals
    bad_frames.push_back(join(hpoint2(p.x(), p.y()), hpoint2(0.3, 0.25)));
  }
  CHECK(birkhoff_tangency_defect(poly, frames, bad_tangents) > 1e-4);
  CHECK(birkhoff_tangency_defect(poly, bad_frames, tangents) > 1e-4);
}

TEST_CASE("surface jet of the ellipsoid carries the axis curvatures") {
  std::array<double, 3> axes{9.0, 4.0, 1.0};  // semiaxes 3, 2, 1
  SurfaceJet jet = ellipsoid_jet(axes, Eigen::Vector3d(3.0, 0.0, 0.0));
  CHECK((jet.normal - Eigen::Vector3d(1.0, 0.0, 0.0)).norm() < 1e-12);
  // normal sections along the other axes have curvature A / B^2 and A / C^2
  CHECK(jet.curvature[0] == doctest::Approx(3.0 / 4.0).epsilon(1e-10));
  CHECK(jet.curvature[1] == doctest::Approx(3.0 / 1.0).epsilon(1e-10));
  for (const auto& dir : jet.principal) {
    CHECK(std::abs(dir.dot(jet.normal)) < 1e-10);
    CHECK(dir.norm() == doctest::Approx(1.0));
  }
  CHECK(std::abs(jet.principal[0].dot(jet.principal[1])) < 1e-10);
}

TEST_CASE("the sphere jet is umbilic with curvature one over the radius") {
  std::array<double, 3> axes{4.0, 4.0, 4.0};
  Eigen::Vector3d p = 2.0 * Eigen::Vector3d(1.0, 2.0, -1.0).normalized();
  SurfaceJet jet = ellipsoid_jet(axes, p);
  CHECK(jet.curvature[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(jet.curvature[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK((jet.normal - p.normalized()).norm() < 1e-10);
}

TEST_CASE("at most two tangent hyperplanes are admitted on a triaxial ellipsoid") {
  std::array<double, 3> axes{3.0, 2.0, 1.0};
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> th(-M_PI, M_PI), ph(-1.2, 1.2), coef(-1.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    Eigen::Vector3d p(std::sqrt(axes[0]) * std::cos(ph(rng)) * std::cos(th(rng)),
                      std::sqrt(axes[1]) * std::cos(ph(rng)) * std::sin(th(rng)), 0.0);
    double s = 1.0 - p.x() * p.x() / axes[0] - p.y() * p.y() / axes[1];
    if (s < 0.05) continue;
    p.z() = std::sqrt(axes[2] * s);
    SurfaceJet jet = ellipsoid_jet(axes, p);
    Eigen::Vector3d raw(coef(rng), coef(rng), coef(rng));
    Eigen::Vector3d xi = raw - jet.normal * jet.normal.dot(raw);
    if (xi.norm() < 1e-3) continue;
    xi.normalize();
    auto admitted = permitted_hyperplanes(jet, xi, 0.7);
    CHECK(admitted.eta.size() <= 2);
    CHECK(admitted.eta.size() >= 1);
    for (size_t j = 0; j < admitted.eta.size(); ++j) {
      CHECK(std::abs(admitted.eta[j].dot(jet.normal)) < 1e-8);  // eta lives in the tangent plane
      CHECK(admitted.eta[j].norm() == doctest::Approx(1.0));
      CHECK(std::abs(admitted.alignment[j]) > 1e-10);  // not orthogonal to the load
    }
  }
}

TEST_CASE("the sphere admits exactly the hyperplane orthogonal to the tangent direction") {
  std::array<double, 3> axes{4.0, 4.0, 4.0};
  Eigen::Vector3d p = 2.0 * Eigen::Vector3d(0.3, -0.5, 0.81).normalized();
  SurfaceJet jet = ellipsoid_jet(axes, p);
  Eigen::Vector3d raw(0.2, 0.9, -0.1);
  Eigen::Vector3d xi = (raw - jet.normal * jet.normal.dot(raw)).normalized();
  auto admitted = permitted_hyperplanes(jet, xi, 0.5);
  REQUIRE(admitted.eta.size() == 1);
  // the admitted hyperplane is xi-orthogonal: its in-plane normal is xi itself
  CHECK(std::abs(std::abs(admitted.eta[0].dot(xi)) - 1.0) < 1e-10);
}

TEST_CASE("chasles tangency parameters are the orbit invariant on the Euclidean ellipse") {
  QuadricBoundary table({2.0, 1.0}, euclidean_frame());
  Eigen::VectorXd p0 = table.point_at(0.3), p1 = table.point_at(1.4);
  auto report = chasles_invariance({2.0, 1.0}, {1.0, 1.0}, p0, p1, 30);
  CHECK(report.chords == 31);
  CHECK(report.stopped_light_like == -1);
  CHECK(report.max_drift < 1e-10);
  REQUIRE(!report.parameters.empty());
  REQUIRE(report.parameters[0].size() == 1);
  double lambda = 2.0 * 1.0 *
                  joachimsthal_invariant(Eigen::Vector2d(p0), Eigen::Vector2d(p1 - p0), 2.0, 1.0);
  CHECK(report.parameters[0][0] == doctest::Approx(lambda).epsilon(1e-10));
}

TEST_CASE("chasles tangency parameters stay constant for the diagonal-metric ellipse") {
  Eigen::VectorXd p0(2), p1(2);
  p0 << std::sqrt(2.0) * std::cos(0.3), std::sin(0.3);
  p1 << std::sqrt(2.0) * std::cos(1.1), std::sin(1.1);
  auto report = chasles_invariance({2.0, 1.0}, {1.0, -1.0}, p0, p1, 50);
  CHECK(report.chords == 51);
  CHECK(report.stopped_light_like == -1);
  CHECK(report.max_drift < 1e-8);
}

TEST_CASE("chasles parameters in space form a constant pair along ellipsoid orbits") {
  QuadricBoundary ellipsoid({3.0, 2.0, 1.0}, euclidean_frame());
  Eigen::VectorXd p0 = ellipsoid.point_at(0.4, 0.3), p1 = ellipsoid.point_at(1.0, 1.0);
  auto report = chasles_invariance({3.0, 2.0, 1.0}, {1.0, 1.0, 1.0}, p0, p1, 40);
  CHECK(report.chords == 41);
  CHECK(report.max_drift < 1e-8);
  REQUIRE(!report.parameters.empty());
  CHECK(report.parameters[0].size() == 2);
}

TEST_CASE("a light-like seed chord stops the diagonal-metric orbit immediately") {
  // on x^2/2 + y^2 = 1 with metric (+, -), the chord between the angles below
  // is light-like: its direction satisfies vx^2 = vy^2
  Eigen::VectorXd p0(2), p1(2);
  p0 << std::sqrt(2.0) * std::cos(0.3), std::sin(0.3);
  p1 << std::sqrt(2.0) * std::cos(0.9309594173403907), std::sin(0.9309594173403907);
  auto report = chasles_invariance({2.0, 1.0}, {1.0, -1.0}, p0, p1, 10);
  CHECK(report.stopped_light_like == 0);
  CHECK(report.chords == 0);
}
