#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include "billiards/reflect/boundary.hpp"
#include "billiards/reflect/orbit.hpp"
#include "billiards/reflect/reflection.hpp"

namespace billiards {

namespace {

double vec_scale(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

// --- QuadricBoundary ---------------------------------------------------------

QuadricBoundary::QuadricBoundary(std::vector<double> semiaxes_sq, FrameRule rule)
    : a_(std::move(semiaxes_sq)), rule_(std::move(rule)) {
  if (a_.size() < 2) throw geometry_error("quadric boundary needs dimension >= 2");
  for (double aj : a_)
    if (aj == 0.0) throw geometry_error("vanishing squared semiaxis");
  if (!rule_) throw geometry_error("missing frame rule");
}

int QuadricBoundary::dim() const { return static_cast<int>(a_.size()); }

bool QuadricBoundary::contains(const Eigen::VectorXd& p, double eps) const {
  if (p.size() != dim()) return false;
  double phi = -1.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) phi += p(i) * p(i) / a_[static_cast<std::size_t>(i)];
  return std::abs(phi) <= eps;
}

Eigen::VectorXd QuadricBoundary::gradient(const Eigen::VectorXd& p) const {
  if (p.size() != dim()) throw geometry_error("point dimension mismatch");
  Eigen::VectorXd g(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) g(i) = 2.0 * p(i) / a_[static_cast<std::size_t>(i)];
  return g;
}

FramedPoint QuadricBoundary::frame_at(const Eigen::VectorXd& p) const {
  if (!contains(p, 1e-6)) throw geometry_error("point does not lie on the quadric boundary");
  return make_framed_point(p, gradient(p), rule_);
}

Eigen::VectorXd QuadricBoundary::next_intersection(const Eigen::VectorXd& p,
                                                   const Eigen::VectorXd& v) const {
  if (p.size() != dim() || v.size() != dim()) throw geometry_error("dimension mismatch");
  if (vec_scale(v) == 0.0) throw geometry_error("zero direction");
  double A = 0.0, B = 0.0, C = -1.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double ai = a_[static_cast<std::size_t>(i)];
    A += v(i) * v(i) / ai;
    B += p(i) * v(i) / ai;
    C += p(i) * p(i) / ai;
  }
  const double s_min = 1e-9 * (1.0 + vec_scale(p)) / v.norm();
  double best = std::numeric_limits<double>::infinity();
  if (std::abs(A) <= 1e-14 * (std::abs(B) + std::abs(C))) {
    // Asymptotic direction: the restriction is linear.
    if (B == 0.0) throw geometry_error("ray runs along the boundary asymptote");
    const double s = -C / (2.0 * B);
    if (s > s_min) best = s;
  } else {
    const double disc = B * B - A * C;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double q = B >= 0.0 ? -(B + sq) : -(B - sq);
      const double s1 = q / A;
      const double s2 = (q == 0.0) ? 0.0 : C / q;
      for (double s : {s1, s2})
        if (s > s_min) best = std::min(best, s);
    }
  }
  if (!std::isfinite(best)) throw geometry_error("ray does not meet the boundary again");
  return p + best * v;
}

Eigen::VectorXd QuadricBoundary::point_at(double theta) const {
  if (dim() != 2) throw geometry_error("angle parametrization needs a planar boundary");
  Eigen::VectorXd p(2);
  p << std::sqrt(a_[0]) * std::cos(theta), std::sqrt(a_[1]) * std::sin(theta);
  return p;
}

Eigen::VectorXd QuadricBoundary::point_at(double theta, double phi) const {
  if (dim() != 3) throw geometry_error("two-angle parametrization needs a 3d boundary");
  Eigen::VectorXd p(3);
  p << std::sqrt(a_[0]) * std::cos(theta) * std::cos(phi),
      std::sqrt(a_[1]) * std::sin(theta) * std::cos(phi), std::sqrt(a_[2]) * std::sin(phi);
  return p;
}

// --- PolygonBoundary ---------------------------------------------------------

PolygonBoundary::PolygonBoundary(std::vector<Eigen::Vector2d> vertices,
                                 std::vector<FrameRule> edge_rules)
    : verts_(std::move(vertices)), rules_(std::move(edge_rules)) {
  if (verts_.size() < 3) throw geometry_error("polygon needs at least three vertices");
  if (rules_.size() != verts_.size())
    throw geometry_error("polygon needs one frame rule per edge");
  for (std::size_t j = 0; j < verts_.size(); ++j) {
    const Eigen::Vector2d e = vertex(j + 1) - verts_[j];
    if (e.cwiseAbs().maxCoeff() == 0.0) throw geometry_error("repeated polygon vertex");
    if (!rules_[j]) throw geometry_error("missing frame rule on a polygon edge");
  }
}

PolygonBoundary PolygonBoundary::with_uniform_rule(std::vector<Eigen::Vector2d> vertices,
                                                   const FrameRule& rule) {
  std::vector<FrameRule> rules(vertices.size(), rule);
  return PolygonBoundary(std::move(vertices), std::move(rules));
}

namespace {

// Distance from p to the segment [A, B] and the segment parameter of the
// closest point.
std::pair<double, double> segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& A,
                                           const Eigen::Vector2d& B) {
  const Eigen::Vector2d e = B - A;
  const double t = std::clamp((p - A).dot(e) / e.squaredNorm(), 0.0, 1.0);
  return {(p - (A + t * e)).norm(), t};
}

}  // namespace

bool PolygonBoundary::contains(const Eigen::VectorXd& p, double eps) const {
  if (p.size() != 2) return false;
  const Eigen::Vector2d q(p(0), p(1));
  for (std::size_t j = 0; j < verts_.size(); ++j)
    if (segment_distance(q, verts_[j], vertex(j + 1)).first <= eps) return true;
  return false;
}

std::size_t PolygonBoundary::edge_index_of(const Eigen::VectorXd& p, double eps) const {
  if (p.size() != 2) throw geometry_error("polygon points are planar");
  const Eigen::Vector2d q(p(0), p(1));
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t j = 0; j < verts_.size(); ++j) {
    const double d = segment_distance(q, verts_[j], vertex(j + 1)).first;
    if (d < best) {
      best = d;
      arg = j;
    }
  }
  if (best > eps) throw geometry_error("point does not lie on the polygon");
  return arg;
}

FramedPoint PolygonBoundary::frame_at(const Eigen::VectorXd& p) const {
  const std::size_t j = edge_index_of(p);
  const Eigen::Vector2d e = vertex(j + 1) - verts_[j];
  Eigen::VectorXd normal(2);
  normal << e(1), -e(0);
  return make_framed_point(p, normal, rules_[j]);
}

Eigen::VectorXd PolygonBoundary::next_intersection(const Eigen::VectorXd& p,
                                                   const Eigen::VectorXd& v) const {
  if (p.size() != 2 || v.size() != 2) throw geometry_error("dimension mismatch");
  if (vec_scale(v) == 0.0) throw geometry_error("zero direction");
  const double s_min = 1e-9 * (1.0 + vec_scale(p)) / v.norm();
  double best_s = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  std::size_t best_j = 0;
  bool found = false;
  for (std::size_t j = 0; j < verts_.size(); ++j) {
    const Eigen::Vector2d A = verts_[j];
    const Eigen::Vector2d e = vertex(j + 1) - A;
    // p + s v = A + t e
    const double det = v(0) * (-e(1)) - v(1) * (-e(0));
    if (std::abs(det) <= 1e-14 * v.norm() * e.norm()) continue;  // parallel edge
    const Eigen::Vector2d rhs = A - Eigen::Vector2d(p(0), p(1));
    const double s = (rhs(0) * (-e(1)) - rhs(1) * (-e(0))) / det;
    const double t = (v(0) * rhs(1) - v(1) * rhs(0)) / det;
    if (s <= s_min || t < -tol::vertex_guard || t > 1.0 + tol::vertex_guard) continue;
    if (s < best_s) {
      best_s = s;
      best_t = t;
      best_j = j;
      found = true;
    }
  }
  if (!found) throw geometry_error("ray leaves the polygon without hitting an edge");
  if (best_t < tol::vertex_guard || best_t > 1.0 - tol::vertex_guard)
    throw degenerate_error("orbit hits a polygon vertex");
  (void)best_j;
  return p + best_s * v;
}

// --- ChartBoundary -----------------------------------------------------------

ChartBoundary::ChartBoundary(Chart gamma, Chart dgamma, FrameRule rule, int seeds)
    : gamma_(std::move(gamma)), dgamma_(std::move(dgamma)), rule_(std::move(rule)), seeds_(seeds) {
  if (!gamma_ || !dgamma_ || !rule_) throw geometry_error("incomplete chart boundary");
  if (seeds_ < 4) throw geometry_error("too few Newton seeds");
}

double ChartBoundary::parameter_of(const Eigen::VectorXd& p) const {
  if (p.size() != 2) throw geometry_error("chart boundaries are planar");
  const Eigen::Vector2d q(p(0), p(1));
  const double two_pi = 2.0 * std::numbers::pi;
  double best_u = 0.0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < seeds_; ++i) {
    double u = two_pi * i / seeds_;
    // Newton on g(u) = gamma'(u) . (gamma(u) - q).
    for (int it = 0; it < 50; ++it) {
      const Eigen::Vector2d diff = gamma_(u) - q;
      const Eigen::Vector2d dg = dgamma_(u);
      const double g = dg.dot(diff);
      const double h = 1e-6;
      const double gp = (dgamma_(u + h).dot(gamma_(u + h) - q) - dgamma_(u - h).dot(gamma_(u - h) - q)) /
                        (2.0 * h);
      if (std::abs(gp) < 1e-300) break;
      const double step = g / gp;
      u -= step;
      if (std::abs(step) < 1e-14) break;
    }
    const double d = (gamma_(u) - q).norm();
    if (d < best_d) {
      best_d = d;
      best_u = u;
    }
  }
  if (best_d > 1e-6 * (1.0 + q.norm()))
    throw geometry_error("point does not lie on the chart boundary");
  best_u = std::fmod(best_u, two_pi);
  if (best_u < 0.0) best_u += two_pi;
  return best_u;
}

bool ChartBoundary::contains(const Eigen::VectorXd& p, double eps) const {
  if (p.size() != 2) return false;
  try {
    const double u = parameter_of(p);
    return (gamma_(u) - Eigen::Vector2d(p(0), p(1))).norm() <= eps * (1.0 + p.norm());
  } catch (const geometry_error&) {
    return false;
  }
}

FramedPoint ChartBoundary::frame_at(const Eigen::VectorXd& p) const {
  const double u = parameter_of(p);
  const Eigen::Vector2d tangent = dgamma_(u);
  if (tangent.cwiseAbs().maxCoeff() == 0.0)
    throw degenerate_error("chart derivative vanishes (singular parametrization)");
  Eigen::VectorXd normal(2);
  normal << tangent(1), -tangent(0);
  return make_framed_point(p, normal, rule_);
}

Eigen::VectorXd ChartBoundary::next_intersection(const Eigen::VectorXd& p,
                                                 const Eigen::VectorXd& v) const {
  if (p.size() != 2 || v.size() != 2) throw geometry_error("dimension mismatch");
  if (vec_scale(v) == 0.0) throw geometry_error("zero direction");
  const Eigen::Vector2d q(p(0), p(1));
  const Eigen::Vector2d w(v(0), v(1));
  const double two_pi = 2.0 * std::numbers::pi;
  const double s_min = 1e-9 * (1.0 + q.norm()) / w.norm();
  const double accept = 1e-12 * (1.0 + q.norm());

  double best_s = std::numeric_limits<double>::infinity();
  double best_u = 0.0;
  bool found = false;
  for (int i = 0; i < seeds_; ++i) {
    double u = two_pi * i / seeds_;
    double s = w.dot(gamma_(u) - q) / w.squaredNorm();
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const Eigen::Vector2d F = gamma_(u) - q - s * w;
      if (F.norm() <= accept) {
        converged = true;
        break;
      }
      Eigen::Matrix2d J;
      J.col(0) = dgamma_(u);
      J.col(1) = -w;
      const double det = J(0, 0) * J(1, 1) - J(0, 1) * J(1, 0);
      if (std::abs(det) < 1e-300) break;
      const Eigen::Vector2d step = J.inverse() * F;
      u -= step(0);
      s -= step(1);
      if (step.cwiseAbs().maxCoeff() < 1e-16) {
        converged = (gamma_(u) - q - s * w).norm() <= accept;
        break;
      }
    }
    if (!converged || !(s > s_min)) continue;
    // first hit always wins: the margin arithmetic would be NaN against infinity
    if (!found || s < best_s - 1e-12 * (1.0 + std::abs(best_s))) {
      best_s = s;
      best_u = u;
      found = true;
    }
  }
  if (!found) throw numerical_error("no ray intersection with the chart boundary found");
  const Eigen::Vector2d hit = gamma_(best_u);
  Eigen::VectorXd out(2);
  out << hit(0), hit(1);
  return out;
}

// --- Orbit iteration ---------------------------------------------------------

Eigen::VectorXd billiard_step(const Boundary& b, const Eigen::VectorXd& p1,
                              const Eigen::VectorXd& p2) {
  const Eigen::VectorXd v = p2 - p1;
  const FramedPoint fp = b.frame_at(p2);
  const Eigen::VectorXd out = projective_reflect_direction(fp, v);
  return b.next_intersection(p2, out);
}

Orbit iterate_orbit(const Boundary& b, const Eigen::VectorXd& p1, const Eigen::VectorXd& p2,
                    std::size_t steps, double tol) {
  if (vec_scale((p2 - p1).eval()) <= 1e-12 * (1.0 + vec_scale(p1)))
    throw geometry_error("orbit seed chord is degenerate");

  std::vector<Eigen::VectorXd> points{p1, p2};
  std::vector<Eigen::VectorXd> outgoing;   // outgoing direction at interior vertex k (points[k+1])
  std::vector<double> residuals;
  points.reserve(steps + 2);
  for (std::size_t k = 0; k < steps; ++k) {
    const Eigen::VectorXd& prev = points[points.size() - 2];
    const Eigen::VectorXd& cur = points.back();
    const Eigen::VectorXd v_in = cur - prev;
    const FramedPoint fp = b.frame_at(cur);
    const Eigen::VectorXd v_out = projective_reflect_direction(fp, v_in);
    residuals.push_back(reflection_harmonic_residual(fp, v_in, v_out));
    outgoing.push_back(v_out);
    points.push_back(b.next_intersection(cur, v_out));
  }

  Orbit orbit;
  orbit.vertices.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    OrbitVertex& vx = orbit.vertices[i];
    vx.point = points[i];
    if (i == 0) {
      vx.incoming = vx.outgoing = points[1] - points[0];
      vx.harmonic_residual = 0.0;
    } else if (i + 1 < points.size()) {
      vx.incoming = points[i] - points[i - 1];
      vx.outgoing = outgoing[i - 1];
      vx.harmonic_residual = residuals[i - 1];
    } else {
      vx.incoming = vx.outgoing = points[i] - points[i - 1];
      vx.harmonic_residual = 0.0;
    }
  }

  const double scale = 1.0 + vec_scale(p1);
  for (std::size_t k = 1; k + 1 < points.size(); ++k) {
    const double d0 = vec_scale((points[k] - points[0]).eval());
    const double d1 = vec_scale((points[k + 1] - points[1]).eval());
    const double m = std::max(d0, d1);
    if (m < orbit.closure_residual) orbit.closure_residual = m;
    if (!orbit.periodic && m <= tol * scale) {
      orbit.periodic = true;
      orbit.period = k;
      orbit.closure_residual = m;
      break;
    }
  }
  return orbit;
}

}  // namespace billiards
