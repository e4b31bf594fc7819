#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

#include "billiards/common.hpp"
#include "billiards/projcore/projective.hpp"

namespace billiards {

/// Triangle orbit inscribed in the conic x^2/a + y^2/b = 1, tangent to the
/// inner confocal member that closes after three bounces.
struct TriangleOrbit {
  std::array<Eigen::Vector2d, 3> vertices;
  double closure_residual = 0.0;
};

/// The one-parameter family of triangle orbits, sampled at N equally spaced
/// starting angles of the boundary parametrization.
std::vector<TriangleOrbit> triangular_orbit_family(double a, double b, int N);

/// Circumcenter of a nondegenerate triangle (degenerate_error if collinear).
Eigen::Vector2d circumcenter(const Eigen::Vector2d& A, const Eigen::Vector2d& B,
                             const Eigen::Vector2d& C);

enum class FittedConicClass { ellipse, hyperbola, parabola, point, other };

struct ConicFit {
  /// A x^2 + B xy + C y^2 + D x + E y + F = 0, scaled to unit peak and
  /// deterministic sign.
  Eigen::Matrix<double, 6, 1> coefficients = Eigen::Matrix<double, 6, 1>::Zero();
  /// RMS algebraic residual in the centered, unit-scale frame used for the fit.
  double residual = 0.0;
  FittedConicClass cls = FittedConicClass::other;
};

/// Total-least-squares conic through scattered points, computed in a
/// centered, unit-RMS frame for conditioning.
ConicFit fit_conic(const std::vector<Eigen::Vector2d>& pts);

/// Circumcenters of the triangle orbit family and the conic they trace; a
/// cloud collapsing to one point is classified FittedConicClass::point.
struct CircumcenterLocus {
  std::vector<Eigen::Vector2d> centers;
  ConicFit fit;
};
CircumcenterLocus circumcenter_locus(double a, double b, int N);

/// Angle-bisector data at each vertex of a closed polygon: the sum of the
/// two unit chord directions and the hyperplane through the vertex
/// orthogonal to it.
struct BisectorHyperplane {
  Eigen::VectorXd direction;  ///< unit bisector direction
  Eigen::VectorXd normal;     ///< normal of the orthogonal hyperplane (same direction)
};
std::vector<BisectorHyperplane> classical_bisector_hyperplanes(
    const std::vector<Eigen::VectorXd>& polygon);

/// At each vertex of a closed planar polygon, the harmonic conjugate of the
/// given frame line with respect to the two chords there. For a billiard
/// orbit with its frame lines this recovers the boundary tangent lines.
std::vector<HVecR> conjugate_support_lines(const std::vector<Eigen::Vector2d>& polygon,
                                           const std::vector<HVecR>& frame_lines);

/// Worst projective distance between the conjugate support lines and given
/// reference tangent lines.
double birkhoff_tangency_defect(const std::vector<Eigen::Vector2d>& polygon,
                                const std::vector<HVecR>& frame_lines,
                                const std::vector<HVecR>& tangent_lines);

/// Second-order data of the ellipsoid sum x_i^2/a_i = 1 at a boundary point.
struct SurfaceJet {
  Eigen::Vector3d p;
  Eigen::Vector3d normal;                    ///< unit outward Euclidean normal
  std::array<double, 2> curvature{};         ///< principal curvatures, ascending
  std::array<Eigen::Vector3d, 2> principal;  ///< orthonormal principal directions
};
SurfaceJet ellipsoid_jet(const std::array<double, 3>& semiaxes_sq, const Eigen::Vector3d& p);

/// Tangent hyperplane selection at a surface point for the frame field
/// nu + ratio * xi (nu the unit normal, xi a fixed unit tangent direction):
/// the admitted hyperplane normals eta in the tangent plane are the real
/// eigenvectors of M + V l^T that are not orthogonal to xi. At most two.
struct PermittedHyperplanes {
  Eigen::Matrix2d shape = Eigen::Matrix2d::Zero();  ///< M in the principal basis
  Eigen::Vector2d load = Eigen::Vector2d::Zero();   ///< V in the principal basis
  std::vector<Eigen::Vector2d> eta_coords;          ///< admitted normals, principal basis
  std::vector<Eigen::Vector3d> eta;                 ///< the same in ambient coordinates
  std::vector<double> alphas;                       ///< eigenvalues of the admitted normals
  std::vector<double> alignment;                    ///< l . eta per admitted normal
  bool retried_for_exceptional = false;             ///< xi had to be nudged off the bad set
};
PermittedHyperplanes permitted_hyperplanes(const SurfaceJet& jet, const Eigen::Vector3d& xi,
                                           double ratio);

/// Orbit check for reflections framed by a diagonal metric: the sorted
/// confocal tangency parameters of every chord form one constant multiset.
struct ChaslesReport {
  std::vector<std::vector<double>> parameters;  ///< per chord, sorted ascending
  double max_drift = 0.0;       ///< worst deviation from the first chord's parameters
  int stopped_light_like = -1;  ///< chord index that became light-like, or -1
  std::size_t chords = 0;
};
ChaslesReport chasles_invariance(const std::vector<double>& semiaxes_sq,
                                 const std::vector<double>& metric_diag, const Eigen::VectorXd& p0,
                                 const Eigen::VectorXd& p1, int bounces);

}  // namespace billiards
