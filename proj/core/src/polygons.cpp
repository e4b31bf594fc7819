#include "billiards/polyref/polygons.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "billiards/projcore/harmonic.hpp"

namespace billiards {

namespace {

bool incident_rel(const HVecR& point, const HVecR& line, double eps = 1e-8) {
  const double ps = point.cwiseAbs().maxCoeff();
  const double ls = line.cwiseAbs().maxCoeff();
  return std::abs(bilinear_dot(point, line)) <= eps * ps * ls;
}

HVecR hpoint(double x, double y) {
  HVecR p(3);
  p << x, y, 1.0;
  return p;
}

}  // namespace

HVecR FramedPolygon::edge_line(std::size_t j) const {
  const std::size_t n = vertices.size();
  return join(vertices[j % n], vertices[(j + 1) % n]);
}

HVecR FramedPolygon::frame_line_at(std::size_t j, const HVecR& p) const {
  return join(p, pivot(j));
}

FramedPolygon right_spherical_triangle(const Eigen::Vector2d& A, const Eigen::Vector2d& B,
                                       const Eigen::Vector2d& C) {
  FramedPolygon poly;
  poly.vertices = {hpoint(A(0), A(1)), hpoint(B(0), B(1)), hpoint(C(0), C(1))};
  // Edge j joins vertices j and j+1; its frame pencil pivots on the third one.
  poly.pivots = {poly.vertices[2], poly.vertices[0], poly.vertices[1]};
  for (std::size_t j = 0; j < 3; ++j)
    if (incident_rel(poly.pivots[j], poly.edge_line(j)))
      throw geometry_error("degenerate triangle: vertex on the opposite edge");
  return poly;
}

FramedPolygon centrally_framed_polygon(HVecR center, std::vector<HVecR> vertices) {
  if (vertices.size() < 3) throw geometry_error("polygon needs at least three vertices");
  FramedPolygon poly;
  poly.vertices.reserve(vertices.size());
  for (auto& v : vertices) poly.vertices.push_back(normalized(v));
  poly.center = normalized(center);
  poly.pivots.assign(poly.vertices.size(), *poly.center);
  for (std::size_t j = 0; j < poly.size(); ++j)
    if (incident_rel(*poly.center, poly.edge_line(j)))
      throw geometry_error("frame center lies on a polygon edge line");
  return poly;
}

std::vector<HVecR> regular_polygon_vertices(std::size_t n, double offset) {
  if (n < 3) throw geometry_error("polygon needs at least three vertices");
  std::vector<HVecR> verts;
  verts.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = offset - 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    verts.push_back(hpoint(std::cos(theta), std::sin(theta)));
  }
  return verts;
}

VirtualOrbit virtual_orbit(const FramedPolygon& billiard, const HVecR& p1, const HVecR& p2,
                           std::size_t steps, double tol) {
  const std::size_t n = billiard.size();
  if (n < 3) throw geometry_error("polygon needs at least three vertices");
  if (!incident_rel(p1, billiard.edge_line(0)))
    throw geometry_error("first orbit point must lie on the line of edge 0");
  if (!incident_rel(p2, billiard.edge_line(1)))
    throw geometry_error("second orbit point must lie on the line of edge 1");
  if (proj_equal(p1, p2)) throw geometry_error("orbit seed chord is degenerate");

  VirtualOrbit orbit;
  orbit.points.reserve(steps + 2);
  orbit.points.push_back(normalized(p1));
  orbit.points.push_back(normalized(p2));

  for (std::size_t k = 2; k < steps + 2; ++k) {
    const std::size_t edge = (k - 1) % n;
    const HVecR& prev = orbit.points[k - 2];
    const HVecR& cur = orbit.points[k - 1];
    const HVecR incoming = join(prev, cur);
    const HVecR frame = billiard.frame_line_at(edge, cur);
    const HVecR outgoing = harmonic_conjugate_line(incoming, frame, billiard.edge_line(edge));
    const HVecR next_edge = billiard.edge_line(k % n);
    if (proj_equal(outgoing, next_edge))
      throw degenerate_error("reflected chord runs along the next edge line");
    orbit.points.push_back(normalized(meet(outgoing, next_edge)));
  }

  for (std::size_t k = 1; k + 1 < orbit.points.size(); ++k) {
    const double d0 = proj_distance(orbit.points[k], orbit.points[0]);
    const double d1 = proj_distance(orbit.points[k + 1], orbit.points[1]);
    const double m = std::max(d0, d1);
    if (m < orbit.period_residual) orbit.period_residual = m;
    if (m <= tol) {
      orbit.period = k;
      orbit.period_residual = m;
      break;
    }
  }
  return orbit;
}

bool great_diagonal_alignment(const FramedPolygon& billiard, const VirtualOrbit& orbit,
                              std::size_t ell, std::size_t r, double tol) {
  const std::size_t n = billiard.size();
  if (n % 2 != 0) throw geometry_error("great diagonals need an even-sided polygon");
  const std::size_t m = n / 2;
  if (ell < r + 3) throw geometry_error("orbit prefix too short for this diagonal check");
  const std::size_t hi = ell + r + 1;  // 1-based index of the last point used
  if (hi > orbit.points.size()) throw geometry_error("orbit too short for this diagonal check");

  const HVecR diagonal =
      join(billiard.vertices[(ell - 1) % n], billiard.vertices[(ell - 1 + m) % n]);
  const HVecR before = join(orbit.points[ell - r - 3], orbit.points[ell - r - 2]);
  const HVecR after = join(orbit.points[ell + r - 1], orbit.points[ell + r]);
  const HVecR hit_before = meet(before, diagonal);
  const HVecR hit_after = meet(after, diagonal);
  return proj_distance(hit_before, hit_after) <= tol;
}

DualOrbit dual_orbit(const FramedPolygon& billiard, const VirtualOrbit& orbit) {
  if (!billiard.center) throw geometry_error("dual picture needs a centrally framed polygon");
  const HVecR O = *billiard.center;
  if (std::abs(O(2)) <= 1e-12 * O.cwiseAbs().maxCoeff())
    throw geometry_error("frame center must be a finite point");
  const Eigen::Vector2d Oa(O(0) / O(2), O(1) / O(2));

  // Dual point of a line under the polarity of x^2 + y^2 = 1 centered at O.
  auto dual_point = [&](const HVecR& line) -> Eigen::Vector2d {
    const double alpha = line(0);
    const double beta = line(1);
    const double gamma = line(2) + alpha * Oa(0) + beta * Oa(1);  // translate O to the origin
    if (std::abs(gamma) <= 1e-12 * std::max(std::abs(alpha), std::abs(beta)))
      throw degenerate_error("line through the frame center has no finite dual point");
    return Eigen::Vector2d(-alpha / gamma + Oa(0), -beta / gamma + Oa(1));
  };

  DualOrbit dual;
  const std::size_t len = orbit.points.size();
  if (len < 2) throw geometry_error("orbit too short to dualize");
  const std::size_t n = billiard.size();
  dual.chord_points.reserve(len - 1);
  for (std::size_t k = 0; k + 1 < len; ++k)
    dual.chord_points.push_back(dual_point(join(orbit.points[k], orbit.points[k + 1])));
  if (len >= 3) {
    dual.edge_points.reserve(len - 2);
    for (std::size_t k = 0; k + 2 < len; ++k)
      dual.edge_points.push_back(dual_point(billiard.edge_line((k + 1) % n)));
  }
  return dual;
}

}  // namespace billiards
