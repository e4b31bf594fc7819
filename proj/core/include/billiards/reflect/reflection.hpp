#pragma once

#include <Eigen/Dense>

#include "billiards/projcore/projective.hpp"
#include "billiards/reflect/frames.hpp"

namespace billiards {

/// Projective reflection of a direction at a framed boundary point: the
/// outgoing line is the harmonic conjugate of the incoming one with respect
/// to the tangent hyperplane trace and the frame line. In the decomposition
/// v = a t + b f (t tangent, f frame) the image is a t - b f, i.e.
///   v' = v - 2 (n.v / n.f) f.
/// Tangent directions are fixed automatically; a direction along the frame
/// reverses. Throws degenerate_error when the frame fails transversality.
Eigen::VectorXd projective_reflect_direction(const FramedPoint& fp, const Eigen::VectorXd& v);

/// Harmonicity defect of the quadruple (incoming, outgoing, tangent trace,
/// frame) in the pencil of lines of the plane spanned by the incoming
/// direction and the frame: 0 for an exact reflection, plus any out-of-plane
/// component of the outgoing direction. Scale-free.
double reflection_harmonic_residual(const FramedPoint& fp, const Eigen::VectorXd& v_in,
                                    const Eigen::VectorXd& v_out);

/// Result of reflecting a line about a tangent line in the complex projective
/// plane: usually a single line, but the tangent itself maps to the whole
/// pencil of lines through the base point when the tangent is isotropic.
struct ComplexReflection {
  enum class Kind { line, pencil };
  Kind kind = Kind::line;
  HVecC line;  ///< valid when kind == line
};

/// Reflect `incoming` (a line through p) about the tangent line at p.
/// Non-isotropic tangent: harmonic conjugation fixing the tangent and the
/// orthogonal line through p. Isotropic tangent: every line maps to the
/// tangent, and the tangent itself blows up to the pencil at p. Reflecting
/// about the line at infinity is undefined (geometry_error).
ComplexReflection complex_reflect_about_tangent(const HVecC& tangent_line, const HVecC& p,
                                                const HVecC& incoming_line);

/// Direction form of the complex reflection for a non-isotropic tangent
/// direction t: v' = 2 q(v,t)/q(t,t) t - v with q the bilinear (unconjugated)
/// dot product. Throws degenerate_error for isotropic t.
Eigen::Vector2cd complex_reflect_direction(const Eigen::Vector2cd& tangent_dir,
                                           const Eigen::Vector2cd& v);

}  // namespace billiards
