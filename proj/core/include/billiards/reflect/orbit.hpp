#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

#include "billiards/reflect/boundary.hpp"

namespace billiards {

/// One orbit vertex with the chords around it and the quality of the
/// reflection that produced the outgoing chord.
struct OrbitVertex {
  Eigen::VectorXd point;
  Eigen::VectorXd incoming;   ///< direction arriving at the point
  Eigen::VectorXd outgoing;   ///< direction leaving the point
  double harmonic_residual = 0.0;
};

struct Orbit {
  std::vector<OrbitVertex> vertices;
  bool periodic = false;
  std::size_t period = 0;  ///< least number of bounces returning the chord
  double closure_residual = std::numeric_limits<double>::infinity();
};

/// One bounce of the billiard map: reflect the chord that arrives at p2 from
/// p1 and return the next boundary point.
Eigen::VectorXd billiard_step(const Boundary& b, const Eigen::VectorXd& p1,
                              const Eigen::VectorXd& p2);

/// Iterate `steps` bounces from the chord (p1, p2), both on the boundary.
/// The first vertex carries the seed chord as both directions with zero
/// residual, and so does the final vertex. Periodicity is the least k with
/// (p_{k+1}, p_{k+2}) matching (p_1, p_2) within tol (affine distance,
/// relative to the point scale).
Orbit iterate_orbit(const Boundary& b, const Eigen::VectorXd& p1, const Eigen::VectorXd& p2,
                    std::size_t steps, double tol = tol::closure);

}  // namespace billiards
