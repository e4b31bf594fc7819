#include "billiards/caustics/poncelet.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "billiards/projcore/harmonic.hpp"
#include "billiards/projcore/projective.hpp"
#include "billiards/projcore/quadratic.hpp"

namespace billiards {

namespace {

using C64 = std::complex<double>;
using Mat3C = Eigen::Matrix3<C64>;

// Unconjugated bilinear form value x^T M y.
C64 form(const Mat3C& M, const HVecC& x, const HVecC& y) { return (x.transpose() * M * y)(0); }

// Orthogonal eigen-frame of a real conic with signature (+,+,-): the matrix
// is V diag(lam) V^T up to scale, with lam(0) < 0 < lam(1) <= lam(2).
struct ConicFrame {
  Eigen::Matrix3d V;
  Eigen::Vector3d lam;
};

ConicFrame conic_frame(const QuadricR& conic) {
  if (conic.m.rows() != 3) throw geometry_error("expected a planar conic");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(conic.m);
  Eigen::Vector3d ev = es.eigenvalues();
  Eigen::Matrix3d V = es.eigenvectors();
  int negatives = 0;
  for (int i = 0; i < 3; ++i) negatives += ev(i) < 0 ? 1 : 0;
  if (negatives == 2) {
    ev = -ev;
    negatives = 1;
  }
  if (negatives != 1 || ev.cwiseAbs().minCoeff() <= 1e-12 * ev.cwiseAbs().maxCoeff())
    throw geometry_error("conic has no real parametrization (degenerate or empty)");
  int neg = 0;
  while (ev(neg) >= 0) ++neg;
  const int pos1 = neg == 0 ? 1 : 0;
  const int pos2 = neg == 2 ? 1 : 2;
  ConicFrame frame;
  frame.lam = Eigen::Vector3d(ev(neg), ev(pos1), ev(pos2));
  frame.V.col(0) = V.col(neg);
  frame.V.col(1) = V.col(pos1);
  frame.V.col(2) = V.col(pos2);
  return frame;
}

Eigen::Vector3d frame_point(const ConicFrame& f, double theta) {
  const Eigen::Vector3d w(1.0 / std::sqrt(-f.lam(0)), std::cos(theta) / std::sqrt(f.lam(1)),
                          std::sin(theta) / std::sqrt(f.lam(2)));
  return f.V * w;
}

double frame_angle(const ConicFrame& f, const Eigen::Vector3d& q) {
  const Eigen::Vector3d w = f.V.transpose() * q;
  const double s = w(0) * std::sqrt(-f.lam(0));
  if (std::abs(s) < 1e-14 * q.cwiseAbs().maxCoeff())
    throw degenerate_error("vertex escaped the affine chart of the conic frame");
  return std::atan2(w(2) / s * std::sqrt(f.lam(2)), w(1) / s * std::sqrt(f.lam(1)));
}

// Relative size of the imaginary part of a homogeneous vector.
double relative_imag(const HVecC& v) {
  double re = 0.0, im = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re = std::max(re, std::abs(v(i)));
    im = std::max(im, std::abs(v(i).imag()));
  }
  return re == 0.0 ? 0.0 : im / re;
}

// Both tangent lines to the conic with dual matrix Ddual through p.
std::pair<HVecC, HVecC> tangent_pair(const Mat3C& Ddual, const HVecC& p) {
  const PencilChart<C64> chart = pencil_chart<C64>(p);
  const C64 A = form(Ddual, chart.c1, chart.c1);
  const C64 B = form(Ddual, chart.c1, chart.c2);
  const C64 C = form(Ddual, chart.c2, chart.c2);
  const auto roots = solve_homogeneous_quadratic<C64>(A, B, C);
  const HVecC l1 = normalized((roots.first.first * chart.c1 + roots.first.second * chart.c2).eval());
  const HVecC l2 = normalized((roots.second.first * chart.c1 + roots.second.second * chart.c2).eval());
  return {l1, l2};
}

// Second intersection of the line with the conic, given one intersection p.
HVecC second_intersection(const Mat3C& Cm, const HVecC& p, const HVecC& line) {
  HVecC s(3);
  s << -line(1), line(0), C64(0);
  const double lscale = line.cwiseAbs().maxCoeff();
  if (s.cwiseAbs().maxCoeff() <= 1e-14 * lscale)
    throw degenerate_error("chord coincides with the line at infinity");
  const C64 den = form(Cm, s, s);
  const C64 num = form(Cm, p, s);
  const double ref = Cm.cwiseAbs().maxCoeff() * s.cwiseAbs().maxCoeff() * s.cwiseAbs().maxCoeff();
  if (std::abs(den) <= 1e-13 * ref) return normalized(s);  // other intersection at infinity
  return normalized((den * p - C64(2) * num * s).eval());
}

struct StartRun {
  std::vector<HVecC> vertices;  // n + 1 entries, vertices[0] is the start
  double residual = 0.0;
  bool is_real = true;
};

StartRun run_start(const Mat3C& Cm, const Mat3C& Ddual, const HVecC& p0, unsigned n) {
  StartRun run;
  run.vertices.reserve(n + 1);
  run.vertices.push_back(normalized(p0));
  HVecC line = tangent_pair(Ddual, run.vertices.front()).first;
  for (unsigned k = 0; k < n; ++k) {
    const HVecC next = second_intersection(Cm, run.vertices.back(), line);
    run.vertices.push_back(next);
    if (relative_imag(next) > 1e-8) run.is_real = false;
    if (k + 1 < n) {
      const auto pair = tangent_pair(Ddual, next);
      const double d1 = proj_distance(pair.first, line);
      const double d2 = proj_distance(pair.second, line);
      if (std::max(d1, d2) < 1e-10)
        throw degenerate_error("tangent pair collapsed onto the incoming chord");
      line = d1 >= d2 ? pair.first : pair.second;
    }
  }
  run.residual = proj_distance(run.vertices.back(), run.vertices.front());
  return run;
}

// Coefficients (ascending, degree 3) of det(lambda C + D) by interpolation.
std::vector<double> pencil_determinant_cubic(const Eigen::Matrix3d& C, const Eigen::Matrix3d& D) {
  const std::array<double, 4> xs{-2.0, -1.0, 1.0, 2.0};
  Eigen::Matrix4d vander;
  Eigen::Vector4d vals;
  for (int r = 0; r < 4; ++r) {
    double x = xs[static_cast<std::size_t>(r)];
    vander(r, 0) = 1.0;
    for (int c = 1; c < 4; ++c) vander(r, c) = vander(r, c - 1) * x;
    vals(r) = (x * C + D).determinant();
  }
  const Eigen::Vector4d coeffs = vander.fullPivLu().solve(vals);
  return {coeffs(0), coeffs(1), coeffs(2), coeffs(3)};
}

bool pencil_in_general_position(const Eigen::Matrix3d& C, const Eigen::Matrix3d& D) {
  std::vector<double> cubic = pencil_determinant_cubic(C, D);
  const double scale = std::max({std::abs(cubic[0]), std::abs(cubic[1]), std::abs(cubic[2]), std::abs(cubic[3])});
  if (scale == 0.0 || std::abs(cubic[3]) <= 1e-12 * scale) return false;  // degenerate pencil
  std::vector<C64> roots;
  try {
    roots = poly_roots(cubic);
  } catch (const error&) {
    return false;
  }
  double rscale = 1.0;
  for (const auto& r : roots) rscale = std::max(rscale, std::abs(r));
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= 1e-8 * rscale) return false;
  return roots.size() == 3;
}

}  // namespace

HVecR conic_point_at(const QuadricR& conic, double theta) {
  const ConicFrame frame = conic_frame(conic);
  return normalized(Eigen::VectorXd(frame_point(frame, theta)));
}

PonceletRunReport poncelet_closure(const QuadricR& outer, const QuadricR& inscribed, unsigned n,
                                   int starts, double tol) {
  if (outer.m.rows() != 3 || inscribed.m.rows() != 3)
    throw geometry_error("tangent-line dynamics requires planar conics");
  if (n < 3) throw geometry_error("polygon closure needs n >= 3");
  if (starts < 1) throw geometry_error("need at least one start point");
  if (inscribed.degenerate()) throw degenerate_error("inscribed conic is degenerate");

  const ConicFrame frame = conic_frame(outer);
  const Mat3C Cm = outer.m.cast<C64>();
  const Mat3C Ddual = inscribed.m.inverse().cast<C64>();

  PonceletRunReport report;
  report.n = n;
  report.general_position = pencil_in_general_position(outer.m, inscribed.m);

  int closed_count = 0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < starts; ++i) {
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.37) / starts;
    const HVecC p0 = frame_point(frame, theta).cast<C64>();
    const StartRun run = run_start(Cm, Ddual, p0, n);
    report.residuals.push_back(run.residual);
    report.max_residual = std::max(report.max_residual, run.residual);
    const bool closed = run.residual < tol;
    closed_count += closed ? 1 : 0;
    if (!run.is_real) report.used_complex_path = true;

    double rotation = nan;
    if (run.is_real && closed) {
      double winding = 0.0;
      double prev = frame_angle(frame, run.vertices.front().real());
      for (std::size_t k = 1; k < run.vertices.size(); ++k) {
        const double cur = frame_angle(frame, run.vertices[k].real());
        double delta = cur - prev;
        while (delta > std::numbers::pi) delta -= 2.0 * std::numbers::pi;
        while (delta <= -std::numbers::pi) delta += 2.0 * std::numbers::pi;
        winding += delta;
        prev = cur;
      }
      rotation = std::abs(winding) / (2.0 * std::numbers::pi * n);
    }
    report.rotation_numbers.push_back(rotation);
  }
  report.closes = closed_count == starts;
  report.all_or_none = closed_count == 0 || closed_count == starts;
  return report;
}

std::vector<Eigen::Vector2d> poncelet_polygon(const QuadricR& outer, const QuadricR& inscribed,
                                              const Eigen::Vector2d& start, unsigned n) {
  if (outer.m.rows() != 3 || inscribed.m.rows() != 3)
    throw geometry_error("tangent-line dynamics requires planar conics");
  HVecR p0(3);
  p0 << start(0), start(1), 1.0;
  if (!outer.contains(p0, 1e-8)) throw geometry_error("start point does not lie on the outer conic");

  const Mat3C Cm = outer.m.cast<C64>();
  const Mat3C Ddual = inscribed.m.inverse().cast<C64>();
  const StartRun run = run_start(Cm, Ddual, p0.cast<C64>(), n);
  if (!run.is_real) throw numerical_error("tangent dynamics left the real field");

  std::vector<Eigen::Vector2d> polygon;
  polygon.reserve(n);
  for (unsigned k = 0; k < n; ++k) {
    const Eigen::Vector3d v = run.vertices[k].real();
    if (std::abs(v(2)) <= 1e-12 * v.cwiseAbs().maxCoeff())
      throw degenerate_error("polygon vertex at infinity");
    polygon.emplace_back(v(0) / v(2), v(1) / v(2));
  }
  return polygon;
}

}  // namespace billiards
