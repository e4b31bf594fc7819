#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "billiards/projcore/quadric.hpp"

namespace billiards {

/// Orbit invariant of the billiard in the conic x^2/a + y^2/b = 1:
///   P(p, v) = (x v_x / a + y v_y / b)^2 / (v_x^2 + v_y^2).
/// Degree-0 homogeneous in v; constant along non-degenerate orbits, and
/// a*b*P is the confocal parameter of the caustic inscribed in the orbit.
/// Throws degenerate_error for isotropic v and geometry_error for p off the
/// conic (beyond eps).
std::complex<double> joachimsthal_invariant(const Eigen::Vector2cd& p, const Eigen::Vector2cd& v,
                                            const std::complex<double>& a, const std::complex<double>& b,
                                            double eps = 1e-8);
double joachimsthal_invariant(const Eigen::Vector2d& p, const Eigen::Vector2d& v, double a, double b,
                              double eps = 1e-8);

/// Parameter of the unique member of the planar confocal family of
/// x^2/a + y^2/b = 1 tangent to the line with covector (alpha, beta, gamma):
///   lambda = (a alpha^2 + b beta^2 - gamma^2) / (alpha^2 + beta^2).
double planar_tangency_parameter(const HVecR& covector, double a, double b);

/// Tangency parameters of the affine line {P + t V} against a (possibly
/// pseudo-Euclidean) confocal family: the real roots of the denominator-
/// cleared discriminant polynomial in lambda,
///   sum_i V_i^2 prod_{k != i} den_k - sum_{i<j} (P_i V_j - P_j V_i)^2 prod_{k notin {i,j}} den_k,
/// of degree d-1. Sorted ascending. Throws degenerate_error when the cleared
/// polynomial vanishes identically.
std::vector<double> tangency_parameters(const ConfocalFamily& family, const Eigen::VectorXd& P,
                                        const Eigen::VectorXd& V);

/// Point where the line {P + t V} touches the family member at a tangency
/// parameter lambda (the double root of the restricted quadratic).
Eigen::VectorXd tangency_point(const ConfocalFamily& family, const Eigen::VectorXd& P,
                               const Eigen::VectorXd& V, double lambda);

enum class ChordRelation { same_line, mirror_pair, neither };

/// Given two directions at a point of the conic with equal orbit invariants,
/// decide whether they span the same line or are exchanged by the complex
/// reflection in the tangent. Throws geometry_error when the invariants
/// disagree (precondition) or the tangent at p is isotropic.
ChordRelation converse_invariant_check(const Eigen::Vector2cd& p, const Eigen::Vector2cd& v1,
                                       const Eigen::Vector2cd& v2, const std::complex<double>& a,
                                       const std::complex<double>& b, double eps = 1e-8);

}  // namespace billiards
