#pragma once

#include <Eigen/Dense>

#include <limits>
#include <optional>
#include <vector>

#include "billiards/common.hpp"
#include "billiards/projcore/projective.hpp"

namespace billiards {

/// A polygon in the projective plane with a frame pencil on every edge: at a
/// point p of edge j the frame line is the join of p with a fixed pivot point
/// attached to that edge (an opposite vertex, or a common center).
struct FramedPolygon {
  std::vector<HVecR> vertices;  ///< homogeneous vertices, cyclic
  std::vector<HVecR> pivots;    ///< one pivot per edge (edge j = vertices j, j+1)
  std::optional<HVecR> center;  ///< set when all pivots are one common center

  std::size_t size() const { return vertices.size(); }
  HVecR edge_line(std::size_t j) const;
  const HVecR& pivot(std::size_t j) const { return pivots[j % pivots.size()]; }
  /// Frame line at a point of edge j.
  HVecR frame_line_at(std::size_t j, const HVecR& p) const;
};

/// Triangle whose edges are framed through the opposite vertex: the central
/// projection of the billiard in a spherical triangle with pairwise
/// orthogonal vertices.
FramedPolygon right_spherical_triangle(const Eigen::Vector2d& A, const Eigen::Vector2d& B,
                                       const Eigen::Vector2d& C);

/// Polygon with every edge framed through one common center.
FramedPolygon centrally_framed_polygon(HVecR center, std::vector<HVecR> vertices);

/// Homogeneous vertices of the regular n-gon inscribed in the unit circle,
/// listed clockwise from angle `offset`.
std::vector<HVecR> regular_polygon_vertices(std::size_t n, double offset = 0.0);

/// Orbit of the virtual line dynamics: point p_k lies on the line of edge
/// (k mod n), ignoring the segment; every bounce replaces the incoming chord
/// by its harmonic conjugate with respect to the edge line and the frame
/// line, and the next point is the meet with the next edge line.
struct VirtualOrbit {
  std::vector<HVecR> points;
  std::optional<std::size_t> period;  ///< least bounce count returning the chord
  double period_residual = std::numeric_limits<double>::infinity();
};

/// Iterate the virtual dynamics from the chord (p1, p2), p1 on edge 0 and p2
/// on edge 1. Produces steps additional points (points.size() == steps + 2)
/// unless a degeneracy interrupts: chord undefined, chord along the next edge
/// line, or a point falling onto a pivot.
VirtualOrbit virtual_orbit(const FramedPolygon& billiard, const HVecR& p1, const HVecR& p2,
                           std::size_t steps, double tol = tol::closure);

/// Concurrency of orbit chords with a great diagonal of a 2m-gon: the chords
/// r bounces before and after passing vertex index ell (1-based along the
/// orbit) meet the diagonal through polygon vertex ell in one common point.
bool great_diagonal_alignment(const FramedPolygon& billiard, const VirtualOrbit& orbit,
                              std::size_t ell, std::size_t r, double tol = 1e-9);

/// Polar-dual picture of an orbit in a centrally framed polygon: with the
/// polarity of x^2 + y^2 = 1 centered at the frame center, chord lines and
/// edge lines become points, and each dual edge point is the midpoint of the
/// neighbouring dual chord points.
struct DualOrbit {
  std::vector<Eigen::Vector2d> chord_points;  ///< dual of the chord (p_k, p_{k+1})
  std::vector<Eigen::Vector2d> edge_points;   ///< dual of the edge line at p_{k+1}
};

DualOrbit dual_orbit(const FramedPolygon& billiard, const VirtualOrbit& orbit);

}  // namespace billiards
