#include <cmath>
#include <utility>

#include "billiards/projcore/harmonic.hpp"
#include "billiards/reflect/frames.hpp"
#include "billiards/reflect/reflection.hpp"

namespace billiards {

namespace {

double vec_scale(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

FrameRule euclidean_frame() {
  return [](const Eigen::VectorXd&, const Eigen::VectorXd& grad) { return grad; };
}

FrameRule pseudo_euclidean_frame(std::vector<double> metric_diag) {
  return [diag = std::move(metric_diag)](const Eigen::VectorXd&, const Eigen::VectorXd& grad) {
    if (static_cast<std::size_t>(grad.size()) != diag.size())
      throw geometry_error("metric signature dimension does not match the boundary");
    Eigen::VectorXd f = grad;
    for (Eigen::Index i = 0; i < f.size(); ++i) f(i) *= diag[static_cast<std::size_t>(i)];
    return f;
  };
}

FrameRule central_frame(Eigen::VectorXd center) {
  return [O = std::move(center)](const Eigen::VectorXd& p, const Eigen::VectorXd&) {
    if (O.size() != p.size()) throw geometry_error("frame center dimension mismatch");
    Eigen::VectorXd f = O - p;
    if (vec_scale(f) <= 1e-14 * (1.0 + vec_scale(p)))
      throw degenerate_error("frame center coincides with the boundary point");
    return f;
  };
}

FrameRule vertex_frame(Eigen::VectorXd point) { return central_frame(std::move(point)); }

FrameRule quadric_induced_frame(QuadricR second) {
  return [Q = std::move(second)](const Eigen::VectorXd& p, const Eigen::VectorXd& grad) {
    const Eigen::Index d = p.size();
    if (Q.m.rows() != d + 1)
      throw geometry_error("inducing quadric dimension does not match the boundary");
    // Homogeneous covector of the tangent hyperplane grad . (x - p) = 0.
    HVecR h(d + 1);
    h.head(d) = grad;
    h(d) = -grad.dot(p);
    const HVecR pole_h = pole(h, Q);
    Eigen::VectorXd f(d);
    if (std::abs(pole_h(d)) <= 1e-12 * pole_h.cwiseAbs().maxCoeff()) {
      f = pole_h.head(d);  // pole at infinity: frame along its direction
    } else {
      f = pole_h.head(d) / pole_h(d) - p;
    }
    if (vec_scale(f) <= 1e-12 * (1.0 + vec_scale(p)))
      throw degenerate_error("tangent hyperplane pole coincides with the boundary point");
    return f;
  };
}

FramedPoint make_framed_point(Eigen::VectorXd p, Eigen::VectorXd grad, const FrameRule& rule) {
  if (p.size() != grad.size()) throw geometry_error("point/gradient dimension mismatch");
  if (vec_scale(grad) == 0.0) throw degenerate_error("vanishing boundary gradient");
  FramedPoint fp;
  fp.frame = rule(p, grad);
  fp.p = std::move(p);
  fp.normal = std::move(grad);
  const double nf = fp.normal.dot(fp.frame);
  if (std::abs(nf) <= 1e-10 * fp.normal.norm() * fp.frame.norm())
    throw degenerate_error("frame line is tangent to the boundary (transversality failure)");
  return fp;
}

Eigen::VectorXd projective_reflect_direction(const FramedPoint& fp, const Eigen::VectorXd& v) {
  if (v.size() != fp.p.size()) throw geometry_error("direction dimension mismatch");
  if (vec_scale(v) == 0.0) throw geometry_error("zero direction");
  const double nf = fp.normal.dot(fp.frame);
  if (std::abs(nf) <= 1e-12 * fp.normal.norm() * fp.frame.norm())
    throw degenerate_error("frame line is tangent to the boundary (transversality failure)");
  const double nv = fp.normal.dot(v);
  return v - (2.0 * nv / nf) * fp.frame;
}

double reflection_harmonic_residual(const FramedPoint& fp, const Eigen::VectorXd& v_in,
                                    const Eigen::VectorXd& v_out) {
  const Eigen::VectorXd& n = fp.normal;
  const Eigen::VectorXd& f = fp.frame;
  const double nf = n.dot(f);
  const double b_in = n.dot(v_in) / nf;
  const double b_out = n.dot(v_out) / nf;
  Eigen::VectorXd t = v_in - b_in * f;  // tangential part of the incoming direction
  if (vec_scale(t) <= 1e-13 * (vec_scale(v_in) + std::abs(b_in) * vec_scale(f)))
    t = v_out - b_out * f;
  const double tt = t.squaredNorm();

  double a_in, a_out, off_plane = 0.0;
  if (tt <= 1e-26) {
    // Both directions along the frame line: reflection must reverse it.
    a_in = a_out = 0.0;
  } else {
    a_in = (v_in - b_in * f).dot(t) / tt;
    a_out = (v_out - b_out * f).dot(t) / tt;
    const Eigen::VectorXd rem = v_out - b_out * f - a_out * t;
    off_plane = rem.norm() / std::max(v_out.norm(), 1e-300);
  }

  const double prod1 = a_in * b_out;
  const double prod2 = a_out * b_in;
  const double denom = std::max(std::abs(prod1), std::abs(prod2));
  const double harmonic = denom == 0.0 ? 0.0 : std::abs(prod1 + prod2) / denom;
  return harmonic + off_plane;
}

ComplexReflection complex_reflect_about_tangent(const HVecC& tangent_line, const HVecC& p,
                                                const HVecC& incoming_line) {
  if (tangent_line.size() != 3 || p.size() != 3 || incoming_line.size() != 3)
    throw geometry_error("complex reflection works in the projective plane");
  HVecC infinity_line(3);
  infinity_line << std::complex<double>(0), std::complex<double>(0), std::complex<double>(1);
  if (proj_equal(tangent_line, infinity_line))
    throw geometry_error("reflection about the line at infinity is undefined");
  const double pscale = p.cwiseAbs().maxCoeff();
  const double tscale = tangent_line.cwiseAbs().maxCoeff();
  const double iscale = incoming_line.cwiseAbs().maxCoeff();
  if (std::abs(bilinear_dot(p, tangent_line)) > 1e-8 * pscale * tscale)
    throw geometry_error("base point does not lie on the tangent line");
  if (std::abs(bilinear_dot(p, incoming_line)) > 1e-8 * pscale * iscale)
    throw geometry_error("incoming line does not pass through the base point");

  const std::complex<double> alpha = tangent_line(0);
  const std::complex<double> beta = tangent_line(1);
  const std::complex<double> iso = alpha * alpha + beta * beta;
  const double dir_scale = std::max(std::abs(alpha), std::abs(beta));

  ComplexReflection out;
  if (std::abs(iso) <= 1e-12 * dir_scale * dir_scale) {
    // Isotropic tangent: the involution degenerates onto the tangent line,
    // except on the tangent itself, which spreads over the whole pencil.
    if (proj_equal(incoming_line, tangent_line)) {
      out.kind = ComplexReflection::Kind::pencil;
      out.line = normalized(tangent_line);
    } else {
      out.kind = ComplexReflection::Kind::line;
      out.line = normalized(tangent_line);
    }
    return out;
  }

  // Non-isotropic: conjugate in the pencil at p with fixed pair (tangent,
  // orthogonal line through p).
  HVecC ortho_dir(3);
  ortho_dir << alpha, beta, std::complex<double>(0);
  const HVecC normal_line = join(p, ortho_dir);
  out.kind = ComplexReflection::Kind::line;
  out.line = harmonic_conjugate_line(incoming_line, tangent_line, normal_line);
  return out;
}

Eigen::Vector2cd complex_reflect_direction(const Eigen::Vector2cd& tangent_dir,
                                           const Eigen::Vector2cd& v) {
  const std::complex<double> tt = tangent_dir(0) * tangent_dir(0) + tangent_dir(1) * tangent_dir(1);
  const double ts = tangent_dir.cwiseAbs().maxCoeff();
  if (ts == 0.0 || std::abs(tt) <= 1e-12 * ts * ts)
    throw degenerate_error("tangent direction is isotropic");
  const std::complex<double> vt = v(0) * tangent_dir(0) + v(1) * tangent_dir(1);
  return (2.0 * vt / tt) * tangent_dir - v;
}

}  // namespace billiards
