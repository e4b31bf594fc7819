#pragma once

#include <Eigen/Dense>

#include <vector>

#include "billiards/common.hpp"
#include "billiards/projcore/quadric.hpp"

namespace billiards {

/// Closure report of the tangent-line dynamics between two conics: from a
/// point of `outer`, draw a tangent to `inscribed`, move to the second
/// intersection with `outer`, repeat n times, and measure how far the n-th
/// vertex lands from the start.
struct PonceletRunReport {
  unsigned n = 0;
  bool closes = false;       ///< every start returned to itself within tol
  bool all_or_none = true;   ///< starts agree (all closed or none did)
  double max_residual = 0.0; ///< worst projective distance start-to-end
  std::vector<double> residuals;
  /// |winding| / (2 pi n) per start; meaningful for closed real-path runs,
  /// NaN when the run had to leave the real field.
  std::vector<double> rotation_numbers;
  /// det(lambda outer + inscribed) has three distinct roots (simple pencil).
  bool general_position = false;
  bool used_complex_path = false;
};

/// Run the dynamics from `starts` points spread around `outer`. When no real
/// tangent to `inscribed` exists from the start points the whole run is
/// carried out over the complex field with the same algebra.
PonceletRunReport poncelet_closure(const QuadricR& outer, const QuadricR& inscribed, unsigned n,
                                   int starts = 10, double tol = tol::closure);

/// Real point of the conic at parameter theta of its canonical (eigenbasis)
/// parametrization. Requires a real nondegenerate conic with real points.
HVecR conic_point_at(const QuadricR& conic, double theta);

/// The n vertices of the tangent-line polygon started at an explicit point of
/// `outer` (real dynamics; throws numerical_error when no real tangents
/// exist). Vertex 0 is the start; closure is up to the caller to check.
std::vector<Eigen::Vector2d> poncelet_polygon(const QuadricR& outer, const QuadricR& inscribed,
                                              const Eigen::Vector2d& start, unsigned n);

}  // namespace billiards
