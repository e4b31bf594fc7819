#include "billiards/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "billiards/caustics/cayley.hpp"
#include "billiards/caustics/poncelet.hpp"
#include "billiards/caustics/tangency.hpp"
#include "billiards/projcore/harmonic.hpp"
#include "billiards/projcore/quadric.hpp"
#include "billiards/reflect/boundary.hpp"
#include "billiards/reflect/orbit.hpp"

namespace billiards {

namespace {

HVecR hpoint(const Eigen::Vector2d& p) {
  HVecR h(3);
  h << p(0), p(1), 1.0;
  return h;
}

}  // namespace

std::vector<TriangleOrbit> triangular_orbit_family(double a, double b, int N) {
  if (a <= 0.0 || b <= 0.0) throw geometry_error("the boundary must be an ellipse");
  if (N < 1) throw geometry_error("need at least one sample");
  const double lambda = (a == b) ? 0.75 * a : three_caustics_closed_form(a, b).lambda_minus;
  const QuadricR outer = axis_conic(a, b);
  const QuadricR inner = ConfocalFamily::euclidean({a, b}).member(lambda);

  std::vector<TriangleOrbit> family;
  family.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / N;
    const Eigen::Vector2d start(std::sqrt(a) * std::cos(theta), std::sqrt(b) * std::sin(theta));
    const auto polygon = poncelet_polygon(outer, inner, start, 4);
    TriangleOrbit orbit;
    orbit.vertices = {polygon[0], polygon[1], polygon[2]};
    orbit.closure_residual = (polygon[3] - polygon[0]).norm();
    family.push_back(orbit);
  }
  return family;
}

Eigen::Vector2d circumcenter(const Eigen::Vector2d& A, const Eigen::Vector2d& B,
                             const Eigen::Vector2d& C) {
  Eigen::Matrix2d lhs;
  lhs.row(0) = 2.0 * (B - A).transpose();
  lhs.row(1) = 2.0 * (C - A).transpose();
  Eigen::Vector2d rhs(B.squaredNorm() - A.squaredNorm(), C.squaredNorm() - A.squaredNorm());
  const double scale = lhs.cwiseAbs().maxCoeff();
  if (std::abs(lhs.determinant()) <= 1e-13 * scale * scale)
    throw degenerate_error("collinear triangle has no circumcenter");
  return lhs.fullPivLu().solve(rhs);
}

ConicFit fit_conic(const std::vector<Eigen::Vector2d>& pts) {
  if (pts.size() < 6) throw geometry_error("conic fit needs at least six points");
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double rms = 0.0;
  for (const auto& p : pts) rms += (p - mean).squaredNorm();
  rms = std::sqrt(rms / static_cast<double>(pts.size()));
  if (rms <= 1e-12 * (1.0 + mean.norm())) {
    // the cloud collapses to one point: report the degenerate circle there
    ConicFit fit;
    fit.cls = FittedConicClass::point;
    fit.residual = rms;
    Eigen::Matrix<double, 6, 1> coeffs;
    coeffs << 1.0, 0.0, 1.0, -2.0 * mean(0), -2.0 * mean(1), mean.squaredNorm();
    Eigen::Index peak = 0;
    coeffs.cwiseAbs().maxCoeff(&peak);
    fit.coefficients = coeffs / coeffs(peak);
    return fit;
  }

  Eigen::MatrixXd design(static_cast<Eigen::Index>(pts.size()), 6);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::Vector2d q = (pts[i] - mean) / rms;
    design(static_cast<Eigen::Index>(i), 0) = q(0) * q(0);
    design(static_cast<Eigen::Index>(i), 1) = q(0) * q(1);
    design(static_cast<Eigen::Index>(i), 2) = q(1) * q(1);
    design(static_cast<Eigen::Index>(i), 3) = q(0);
    design(static_cast<Eigen::Index>(i), 4) = q(1);
    design(static_cast<Eigen::Index>(i), 5) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
  const Eigen::Matrix<double, 6, 1> v = svd.matrixV().col(5);

  ConicFit fit;
  fit.residual = svd.singularValues()(5) / std::sqrt(static_cast<double>(pts.size()));

  // Classify in the normalized frame (v is a unit vector).
  const double A = v(0), B = v(1), C = v(2);
  const double disc = B * B - 4.0 * A * C;
  const double quad_size = std::max({std::abs(A), std::abs(B), std::abs(C)});
  if (quad_size <= 1e-10) {
    fit.cls = FittedConicClass::other;
  } else if (disc < -1e-10) {
    fit.cls = FittedConicClass::ellipse;
  } else if (disc > 1e-10) {
    fit.cls = FittedConicClass::hyperbola;
  } else {
    fit.cls = FittedConicClass::parabola;
  }

  // Map the coefficients back to the original frame.
  Eigen::Matrix3d Ms;
  Ms << v(0), v(1) / 2.0, v(3) / 2.0, v(1) / 2.0, v(2), v(4) / 2.0, v(3) / 2.0, v(4) / 2.0, v(5);
  Eigen::Matrix3d T = Eigen::Matrix3d::Zero();
  T(0, 0) = 1.0 / rms;
  T(1, 1) = 1.0 / rms;
  T(0, 2) = -mean(0) / rms;
  T(1, 2) = -mean(1) / rms;
  T(2, 2) = 1.0;
  const Eigen::Matrix3d Mo = T.transpose() * Ms * T;
  Eigen::Matrix<double, 6, 1> coeffs;
  coeffs << Mo(0, 0), 2.0 * Mo(0, 1), Mo(1, 1), 2.0 * Mo(0, 2), 2.0 * Mo(1, 2), Mo(2, 2);
  Eigen::Index peak = 0;
  coeffs.cwiseAbs().maxCoeff(&peak);
  if (coeffs(peak) != 0.0) coeffs /= coeffs(peak);
  fit.coefficients = coeffs;
  return fit;
}

CircumcenterLocus circumcenter_locus(double a, double b, int N) {
  const auto family = triangular_orbit_family(a, b, N);
  CircumcenterLocus locus;
  locus.centers.reserve(family.size());
  for (const auto& tri : family)
    locus.centers.push_back(circumcenter(tri.vertices[0], tri.vertices[1], tri.vertices[2]));

  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& c : locus.centers) mean += c;
  mean /= static_cast<double>(locus.centers.size());
  double spread = 0.0;
  for (const auto& c : locus.centers) spread = std::max(spread, (c - mean).norm());
  if (spread < 1e-10) {
    locus.fit.cls = FittedConicClass::point;
    locus.fit.residual = spread;
    return locus;
  }
  locus.fit = fit_conic(locus.centers);
  return locus;
}

std::vector<BisectorHyperplane> classical_bisector_hyperplanes(
    const std::vector<Eigen::VectorXd>& polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) throw geometry_error("polygon needs at least three vertices");
  std::vector<BisectorHyperplane> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::VectorXd& prev = polygon[(j + n - 1) % n];
    const Eigen::VectorXd& cur = polygon[j];
    const Eigen::VectorXd& next = polygon[(j + 1) % n];
    const Eigen::VectorXd to_prev = prev - cur;
    const Eigen::VectorXd to_next = next - cur;
    if (to_prev.norm() == 0.0 || to_next.norm() == 0.0)
      throw degenerate_error("repeated polygon vertex");
    Eigen::VectorXd bisector = to_prev.normalized() + to_next.normalized();
    if (bisector.norm() <= 1e-12)
      throw degenerate_error("straight-angle vertex has no bisector hyperplane");
    bisector.normalize();
    out.push_back({bisector, bisector});
  }
  return out;
}

std::vector<HVecR> conjugate_support_lines(const std::vector<Eigen::Vector2d>& polygon,
                                           const std::vector<HVecR>& frame_lines) {
  const std::size_t n = polygon.size();
  if (n < 3) throw geometry_error("polygon needs at least three vertices");
  if (frame_lines.size() != n) throw geometry_error("need one frame line per vertex");
  std::vector<HVecR> tangents;
  tangents.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const HVecR cur = hpoint(polygon[j]);
    if (!incident(cur, frame_lines[j], 1e-8))
      throw geometry_error("frame line misses its polygon vertex");
    const HVecR chord_prev = join(hpoint(polygon[(j + n - 1) % n]), cur);
    const HVecR chord_next = join(cur, hpoint(polygon[(j + 1) % n]));
    tangents.push_back(harmonic_conjugate_line(frame_lines[j], chord_prev, chord_next));
  }
  return tangents;
}

double birkhoff_tangency_defect(const std::vector<Eigen::Vector2d>& polygon,
                                const std::vector<HVecR>& frame_lines,
                                const std::vector<HVecR>& tangent_lines) {
  if (tangent_lines.size() != polygon.size())
    throw geometry_error("need one tangent line per vertex");
  const auto conjugates = conjugate_support_lines(polygon, frame_lines);
  double defect = 0.0;
  for (std::size_t j = 0; j < conjugates.size(); ++j)
    defect = std::max(defect, proj_distance(conjugates[j], tangent_lines[j]));
  return defect;
}

SurfaceJet ellipsoid_jet(const std::array<double, 3>& semiaxes_sq, const Eigen::Vector3d& p) {
  for (double aj : semiaxes_sq)
    if (aj <= 0.0) throw geometry_error("ellipsoid needs positive squared semiaxes");
  double phi = -1.0;
  for (int i = 0; i < 3; ++i) phi += p(i) * p(i) / semiaxes_sq[static_cast<std::size_t>(i)];
  if (std::abs(phi) > 1e-8) throw geometry_error("point does not lie on the ellipsoid");

  SurfaceJet jet;
  jet.p = p;
  Eigen::Vector3d g;
  for (int i = 0; i < 3; ++i) g(i) = 2.0 * p(i) / semiaxes_sq[static_cast<std::size_t>(i)];
  const double gn = g.norm();
  jet.normal = g / gn;

  Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i) J(i, i) = 2.0 / semiaxes_sq[static_cast<std::size_t>(i)];
  const Eigen::Matrix3d dn =
      (Eigen::Matrix3d::Identity() - jet.normal * jet.normal.transpose()) * J / gn;

  // Orthonormal tangent basis; the shape operator restricted to it.
  int least = 0;
  jet.normal.cwiseAbs().minCoeff(&least);
  const Eigen::Vector3d e1 = jet.normal.cross(Eigen::Vector3d::Unit(least)).normalized();
  const Eigen::Vector3d e2 = jet.normal.cross(e1);
  Eigen::Matrix2d S;
  S(0, 0) = e1.dot(dn * e1);
  S(0, 1) = e1.dot(dn * e2);
  S(1, 0) = e2.dot(dn * e1);
  S(1, 1) = e2.dot(dn * e2);
  S = (0.5 * (S + S.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(S);
  jet.curvature = {eig.eigenvalues()(0), eig.eigenvalues()(1)};
  jet.principal = {e1 * eig.eigenvectors()(0, 0) + e2 * eig.eigenvectors()(1, 0),
                   e1 * eig.eigenvectors()(0, 1) + e2 * eig.eigenvectors()(1, 1)};
  return jet;
}

PermittedHyperplanes permitted_hyperplanes(const SurfaceJet& jet, const Eigen::Vector3d& xi,
                                           double ratio) {
  if (ratio == 0.0) throw geometry_error("frame tilt ratio must be nonzero");
  Eigen::Vector3d xi_t = xi - xi.dot(jet.normal) * jet.normal;
  if (xi_t.norm() <= 1e-8 * std::max(1.0, xi.norm()))
    throw geometry_error("tilt direction must have a tangential component");
  xi_t.normalize();

  PermittedHyperplanes result;
  const Eigen::Vector3d& u1 = jet.principal[0];
  const Eigen::Vector3d& u2 = jet.principal[1];
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  M(0, 0) = jet.curvature[0];
  M(1, 1) = jet.curvature[1];
  result.shape = M;

  auto sv_rank = [](const Eigen::MatrixXd& mat) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
    const auto& s = svd.singularValues();
    const double top = s.size() ? s(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > 1e-8 * std::max(top, 1.0)) ++rank;
    return rank;
  };

  Eigen::Vector2d l, V;
  for (int attempt = 0;; ++attempt) {
    l = Eigen::Vector2d(xi_t.dot(u1), xi_t.dot(u2));
    V = ratio * ratio * Eigen::Vector2d(jet.curvature[0] * l(0), jet.curvature[1] * l(1));
    bool exceptional = false;
    for (int i = 0; i < 2 && !exceptional; ++i) {
      const Eigen::Matrix2d Mb = M - jet.curvature[static_cast<std::size_t>(i)] * Eigen::Matrix2d::Identity();
      Eigen::MatrixXd aug(2, 3);
      aug.leftCols(2) = Mb;
      aug.col(2) = V;
      if (sv_rank(aug) == sv_rank(Mb)) exceptional = true;
    }
    if (!exceptional) break;
    if (attempt >= 3)
      throw numerical_error("tilt direction stuck on the exceptional set");
    // Nudge xi within the tangent plane and retry.
    result.retried_for_exceptional = true;
    const Eigen::Vector3d perp = jet.normal.cross(xi_t);
    xi_t = (std::cos(1e-4) * xi_t + std::sin(1e-4) * perp).normalized();
  }
  result.load = V;

  const Eigen::Matrix2d A = M + V * l.transpose();
  Eigen::EigenSolver<Eigen::Matrix2d> eig(A);
  if (eig.info() != Eigen::Success) throw numerical_error("hyperplane eigenproblem failed");

  for (int i = 0; i < 2; ++i) {
    const std::complex<double> alpha = eig.eigenvalues()(i);
    if (std::abs(alpha.imag()) > 1e-10 * (1.0 + std::abs(alpha))) continue;
    Eigen::Vector2cd w = eig.eigenvectors().col(i);
    // Rotate the phase so the dominant component is real, then drop rounding.
    int dom = 0;
    w.cwiseAbs().maxCoeff(&dom);
    w *= std::conj(w(dom)) / std::abs(w(dom));
    Eigen::Vector2d eta(w(0).real(), w(1).real());
    if (eta.norm() == 0.0) continue;
    eta.normalize();
    if (std::abs(l.dot(eta)) <= 1e-8) continue;
    bool duplicate = false;
    for (const auto& seen : result.eta_coords)
      if (std::abs(seen.dot(eta)) > 1.0 - 1e-10) duplicate = true;
    if (duplicate) continue;
    result.eta_coords.push_back(eta);
    result.eta.push_back(eta(0) * u1 + eta(1) * u2);
    result.alphas.push_back(alpha.real());
    result.alignment.push_back(l.dot(eta));
  }
  return result;
}

ChaslesReport chasles_invariance(const std::vector<double>& semiaxes_sq,
                                 const std::vector<double>& metric_diag, const Eigen::VectorXd& p0,
                                 const Eigen::VectorXd& p1, int bounces) {
  if (semiaxes_sq.size() != metric_diag.size())
    throw geometry_error("metric signature must match the boundary dimension");
  if (bounces < 0) throw geometry_error("negative bounce count");
  ConfocalFamily family;
  family.a = semiaxes_sq;
  family.sigma.reserve(metric_diag.size());
  for (double s : metric_diag) {
    if (s != 1.0 && s != -1.0) throw geometry_error("metric entries must be +1 or -1");
    family.sigma.push_back(s > 0 ? +1 : -1);
  }

  const QuadricBoundary table(semiaxes_sq, pseudo_euclidean_frame(metric_diag));
  ChaslesReport report;
  Eigen::VectorXd p = p0;
  Eigen::VectorXd q = p1;
  for (int chord = 0;; ++chord) {
    const Eigen::VectorXd v = q - p;
    double quad = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      quad += metric_diag[static_cast<std::size_t>(i)] * v(i) * v(i);
    if (std::abs(quad) < 1e-10 * v.squaredNorm()) {
      report.stopped_light_like = chord;
      break;
    }
    report.parameters.push_back(tangency_parameters(family, p, v));
    const auto& first = report.parameters.front();
    const auto& cur = report.parameters.back();
    if (cur.size() != first.size()) {
      report.max_drift = std::numeric_limits<double>::infinity();
    } else {
      for (std::size_t i = 0; i < cur.size(); ++i)
        report.max_drift = std::max(report.max_drift, std::abs(cur[i] - first[i]));
    }
    if (chord == bounces) break;
    const Eigen::VectorXd next = billiard_step(table, p, q);
    p = q;
    q = next;
  }
  report.chords = report.parameters.size();
  return report;
}

}  // namespace billiards
