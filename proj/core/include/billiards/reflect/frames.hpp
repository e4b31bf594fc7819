#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "billiards/common.hpp"
#include "billiards/projcore/quadric.hpp"

namespace billiards {

/// A boundary point together with the data the reflection law needs: the
/// Euclidean normal (gradient of the implicit equation, fixing the tangent
/// hyperplane) and the direction of the frame line at that point.
struct FramedPoint {
  Eigen::VectorXd p;       ///< affine boundary point
  Eigen::VectorXd normal;  ///< gradient direction; its orthogonal complement is the tangent hyperplane
  Eigen::VectorXd frame;   ///< frame-line direction, transversal to the tangent hyperplane
};

/// Rule producing the frame direction from a boundary point and the Euclidean
/// gradient of the boundary there.
using FrameRule =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& p, const Eigen::VectorXd& grad)>;

/// Frame along the Euclidean normal: the classical reflection law.
FrameRule euclidean_frame();

/// Frame along G * grad for the diagonal metric G = diag(metric_diag):
/// reflection of the metric with that signature. A light-like tangent
/// hyperplane makes this direction tangent and fails the transversality
/// check in make_framed_point.
FrameRule pseudo_euclidean_frame(std::vector<double> metric_diag);

/// Frame line through a fixed center O (projective billiard with a central
/// frame field).
FrameRule central_frame(Eigen::VectorXd center);

/// Frame line through a fixed point P; same construction as central_frame,
/// named for polygonal edges framed through an opposite vertex.
FrameRule vertex_frame(Eigen::VectorXd point);

/// Frame through the pole, with respect to `second`, of the tangent
/// hyperplane at p (the frame field a second quadric induces on the first).
FrameRule quadric_induced_frame(QuadricR second);

/// Assemble a FramedPoint from a point, a gradient and a rule, checking that
/// the frame direction is transversal to the tangent hyperplane.
FramedPoint make_framed_point(Eigen::VectorXd p, Eigen::VectorXd grad, const FrameRule& rule);

}  // namespace billiards
