#pragma once

#include <optional>
#include <vector>

#include "billiards/projcore/projective.hpp"

namespace billiards {

/// A quadric hypersurface, stored as a symmetric (d+1)x(d+1) matrix up to
/// scale. Points p with p^T M p = 0 lie on the quadric.
template <class K>
struct Quadric {
  Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic> m;

  explicit Quadric(Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic> matrix) : m(std::move(matrix)) {
    if (m.rows() != m.cols()) throw geometry_error("quadric matrix must be square");
    double scale = m.template lpNorm<Eigen::Infinity>();
    if (scale == 0.0) throw degenerate_error("zero quadric matrix");
    if ((m - m.transpose()).template lpNorm<Eigen::Infinity>() > 1e-9 * scale)
      throw geometry_error("quadric matrix must be symmetric");
    m = ((m + m.transpose()) / K(2)).eval();
  }

  Eigen::Index dim() const { return m.rows() - 1; }

  K evaluate(const HVec<K>& p) const { return (p.transpose() * m * p)(0, 0); }

  bool contains(const HVec<K>& p, double eps = 1e-9) const {
    HVec<K> q = normalized(p);
    return magnitude(evaluate(q)) <= eps * m.template lpNorm<Eigen::Infinity>() * q.size() * q.size();
  }

  int rank(double eps = 1e-10) const {
    Eigen::JacobiSVD<decltype(m)> svd(m);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s[i] > eps * s[0]) ++r;
    return r;
  }

  bool degenerate(double eps = 1e-10) const { return rank(eps) < m.rows(); }
};

using QuadricR = Quadric<double>;
using QuadricC = Quadric<std::complex<double>>;

/// Axis-aligned conic x^2/a + y^2/b = 1 as a projective quadric.
template <class K>
Quadric<K> axis_conic(const K& a, const K& b) {
  Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>::Zero(3, 3);
  m(0, 0) = K(1) / a;
  m(1, 1) = K(1) / b;
  m(2, 2) = K(-1);
  return Quadric<K>(m);
}

/// Polar hyperplane of a point: the covector Q*p.
template <class K>
HVec<K> polar(const HVec<K>& p, const Quadric<K>& Q) {
  if (Q.degenerate()) throw degenerate_error("polar with respect to a degenerate quadric");
  return Q.m * p;
}

/// Pole of a hyperplane: the inverse of polar.
template <class K>
HVec<K> pole(const HVec<K>& hyperplane, const Quadric<K>& Q) {
  if (Q.degenerate()) throw degenerate_error("pole with respect to a degenerate quadric");
  return Q.m.fullPivLu().solve(hyperplane);
}

/// Tangent hyperplane at an on-quadric point (the polar of the point).
template <class K>
HVec<K> tangent_at(const HVec<K>& p, const Quadric<K>& Q, double eps = 1e-8) {
  if (!Q.contains(p, eps)) throw geometry_error("tangent requested at an off-quadric point");
  return polar(p, Q);
}

/// Dual quadric (tangential equation): matrix proportional to the inverse.
template <class K>
Quadric<K> dual_quadric(const Quadric<K>& Q) {
  if (Q.degenerate()) throw degenerate_error("dual of a degenerate quadric");
  Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic> inv = Q.m.inverse();
  double scale = inv.template lpNorm<Eigen::Infinity>();
  return Quadric<K>(inv / K(scale));
}

/// A pencil of quadrics: either the direct span of the two matrices, or the
/// confocal construction (span the duals, dualize the members back).
template <class K>
struct Pencil {
  enum class Mode { direct, confocal };

  Quadric<K> q1, q2;
  Mode mode;

  Pencil(Quadric<K> first, Quadric<K> second, Mode how) : q1(std::move(first)), q2(std::move(second)), mode(how) {
    // Proportionality test with an arbitrary (possibly complex) scale: divide
    // out the entry where q1 peaks and compare.
    Eigen::Index i0 = 0, j0 = 0;
    q1.m.cwiseAbs().maxCoeff(&i0, &j0);
    K ratio = q2.m(i0, j0) / q1.m(i0, j0);
    if ((q2.m - ratio * q1.m).template lpNorm<Eigen::Infinity>() <
        1e-10 * q2.m.template lpNorm<Eigen::Infinity>())
      throw degenerate_error("pencil generators are projectively equal");
    if (mode == Mode::confocal && (q1.degenerate() || q2.degenerate()))
      throw degenerate_error("confocal pencil requires non-degenerate generators");
  }

  Quadric<K> member(const K& lambda, const K& mu) const {
    if (magnitude(lambda) == 0.0 && magnitude(mu) == 0.0)
      throw degenerate_error("pencil member (0, 0) is undefined");
    if (mode == Mode::direct) return Quadric<K>(lambda * q1.m + mu * q2.m);
    Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic> dual_combo =
        lambda * q1.m.inverse() + mu * q2.m.inverse();
    Quadric<K> d(dual_combo);
    if (d.degenerate()) throw degenerate_error("confocal pencil member has a singular dual");
    return dual_quadric(d);
  }
};

/// The concrete confocal family of an axis-aligned quadric in R^d, possibly
/// pseudo-Euclidean: member lambda is sum_j x_j^2 / denom_j(lambda) = 1 with
/// denom_j(lambda) = a_j - lambda for j < k and a_j + lambda for j >= k
/// (signature (k, d-k); the Euclidean family is k = d).
struct ConfocalFamily {
  std::vector<double> a;     ///< base denominators (squared semiaxes)
  std::vector<int> sigma;    ///< +1: denominator a_j - lambda; -1: a_j + lambda

  static ConfocalFamily euclidean(std::vector<double> semiaxes_sq) {
    ConfocalFamily f;
    f.sigma.assign(semiaxes_sq.size(), +1);
    f.a = std::move(semiaxes_sq);
    return f;
  }

  static ConfocalFamily pseudo_euclidean(std::vector<double> semiaxes_sq, int k) {
    ConfocalFamily f;
    f.a = std::move(semiaxes_sq);
    if (k < 0 || static_cast<size_t>(k) > f.a.size())
      throw geometry_error("pseudo-Euclidean signature out of range");
    f.sigma.assign(f.a.size(), -1);
    for (int j = 0; j < k; ++j) f.sigma[static_cast<size_t>(j)] = +1;
    return f;
  }

  size_t dim() const { return a.size(); }

  double denom(size_t j, double lambda) const { return a[j] - sigma[j] * lambda; }

  /// Projective matrix of the member at parameter lambda.
  QuadricR member(double lambda) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim()) + 1,
                                              static_cast<Eigen::Index>(dim()) + 1);
    for (size_t j = 0; j < dim(); ++j) {
      double d = denom(j, lambda);
      if (std::abs(d) < 1e-14) throw degenerate_error("confocal member is degenerate at this parameter");
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0 / d;
    }
    m(m.rows() - 1, m.cols() - 1) = -1.0;
    return QuadricR(m);
  }

  /// Dual matrix of the member (diagonal denom_1, ..., denom_d, -1).
  QuadricR dual_member(double lambda) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim()) + 1,
                                              static_cast<Eigen::Index>(dim()) + 1);
    for (size_t j = 0; j < dim(); ++j)
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = denom(j, lambda);
    m(m.rows() - 1, m.cols() - 1) = -1.0;
    return QuadricR(m);
  }
};

/// The two circular points of the complexified plane.
inline HVecC circular_point_I() { return hvec3<std::complex<double>>({1, 0}, {0, 1}, {0, 0}); }
inline HVecC circular_point_J() { return hvec3<std::complex<double>>({1, 0}, {0, -1}, {0, 0}); }

/// A complex line of the plane is isotropic iff it passes through one of the
/// circular points; the line at infinity passes through both.
inline bool is_isotropic_line(const HVecC& covector, double eps = 1e-9) {
  return incident(circular_point_I(), covector, eps) || incident(circular_point_J(), covector, eps);
}

/// Whether a complex affine direction (dx, dy) is isotropic: dx^2 + dy^2 = 0.
inline bool is_isotropic_direction(const std::complex<double>& dx, const std::complex<double>& dy,
                                   double eps = 1e-12) {
  return std::abs(dx * dx + dy * dy) <= eps * (std::norm(dx) + std::norm(dy));
}

struct ConicPredicates {
  bool is_circle = false;
  std::vector<HVecC> isotropic_tangents;  ///< up to 4 tangent lines through the circular points
  std::vector<HVecC> complex_foci;        ///< pairwise intersections, real foci first
};

/// Tangent lines to a non-degenerate conic through a given point, found by
/// solving the dual quadratic on the pencil of lines through the point.
std::vector<HVecC> tangent_lines_through(const HVecC& point, const QuadricC& conic);

/// Circle test and focus computation for a complexified non-degenerate conic.
ConicPredicates conic_predicates(const QuadricC& conic);

}  // namespace billiards
