#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "billiards/common.hpp"

namespace billiards {

/// Homogeneous coordinate vector of a projective point (or, dually, the
/// covector of a hyperplane). Entries are identified up to a common nonzero
/// scale. K is double or std::complex<double>.
template <class K>
using HVec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

using HVecR = HVec<double>;
using HVecC = HVec<std::complex<double>>;

template <class K>
HVec<K> hvec3(const K& x, const K& y, const K& z) {
  HVec<K> v(3);
  v << x, y, z;
  return v;
}

inline HVecR hpoint2(double x, double y) { return hvec3<double>(x, y, 1.0); }

/// Scale so the max-magnitude coordinate has magnitude 1. Throws on the zero
/// vector, which does not represent a projective point.
template <class K>
HVec<K> normalized(const HVec<K>& v) {
  Eigen::Index imax = 0;
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    double m = magnitude(v[i]);
    if (m > best) {
      best = m;
      imax = i;
    }
  }
  if (best == 0.0) throw degenerate_error("zero vector is not a projective point");
  return v / v[imax];
}

/// Projective equality: every 2x2 minor of the stacked 2x(d+1) coordinate
/// matrix is below tolerance, after each vector is max-normalized.
template <class K>
bool proj_equal(const HVec<K>& a, const HVec<K>& b, double eps = tol::projective_eq) {
  if (a.size() != b.size()) return false;
  HVec<K> u = normalized(a), v = normalized(b);
  for (Eigen::Index i = 0; i < u.size(); ++i)
    for (Eigen::Index j = i + 1; j < u.size(); ++j)
      if (magnitude(u[i] * v[j] - u[j] * v[i]) > eps) return false;
  return true;
}

/// Projective distance surrogate: largest 2x2 minor after max-normalization.
/// Zero iff the two vectors represent the same point.
template <class K>
double proj_distance(const HVec<K>& a, const HVec<K>& b) {
  HVec<K> u = normalized(a), v = normalized(b);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    for (Eigen::Index j = i + 1; j < u.size(); ++j)
      worst = std::max(worst, magnitude(u[i] * v[j] - u[j] * v[i]));
  return worst;
}

/// Line through two points of the projective plane (covector), or dually the
/// intersection point of two lines given by covectors.
template <class K>
HVec<K> cross3(const HVec<K>& a, const HVec<K>& b) {
  if (a.size() != 3 || b.size() != 3) throw geometry_error("cross3 requires 3-vectors");
  return hvec3<K>(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}

template <class K>
HVec<K> join(const HVec<K>& p, const HVec<K>& q) {
  HVec<K> l = cross3(p, q);
  if (l.template lpNorm<Eigen::Infinity>() < 1e-14 * (1.0 + p.norm() * q.norm()))
    throw degenerate_error("join of coincident points");
  return l;
}

template <class K>
HVec<K> meet(const HVec<K>& l, const HVec<K>& m) {
  HVec<K> p = cross3(l, m);
  if (p.template lpNorm<Eigen::Infinity>() < 1e-14 * (1.0 + l.norm() * m.norm()))
    throw degenerate_error("meet of coincident lines");
  return p;
}

/// Unconjugated bilinear pairing sum_k a_k b_k (Eigen's dot() would conjugate
/// the first factor over the complex field, which is not the incidence form).
template <class K>
K bilinear_dot(const HVec<K>& a, const HVec<K>& b) {
  return (a.array() * b.array()).sum();
}

template <class K>
bool incident(const HVec<K>& point, const HVec<K>& covector, double eps = tol::projective_eq) {
  HVec<K> p = normalized(point), c = normalized(covector);
  return magnitude(bilinear_dot(p, c)) <= eps * static_cast<double>(p.size());
}

namespace detail {
/// Numerical rank of the matrix whose rows are the given homogeneous vectors.
template <class K>
int stacked_rank(const std::vector<HVec<K>>& vs, double eps = 1e-9) {
  Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic> m(static_cast<Eigen::Index>(vs.size()), vs[0].size());
  for (size_t i = 0; i < vs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = normalized(vs[i]).transpose();
  Eigen::JacobiSVD<decltype(m)> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > eps * s[0]) ++r;
  return r;
}
}  // namespace detail

template <class K>
bool collinear(const std::vector<HVec<K>>& points, double eps = 1e-9) {
  if (points.size() < 3) return true;
  return detail::stacked_rank(points, eps) <= 2;
}

/// Cross-ratio of four pairwise-distinct collinear points: the value h(p4) of
/// the unique projective map h of their common line with h(p1)=inf, h(p2)=0,
/// h(p3)=1. Returned as a homogeneous pair (num:den); den==0 encodes infinity.
template <class K>
std::pair<K, K> cross_ratio_homogeneous(const HVec<K>& p1, const HVec<K>& p2, const HVec<K>& p3,
                                        const HVec<K>& p4) {
  const std::vector<HVec<K>> pts{p1, p2, p3, p4};
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j)
      if (proj_equal(pts[i], pts[j])) throw degenerate_error("cross-ratio of coincident points");
  if (!collinear(pts)) throw geometry_error("cross-ratio of non-collinear points");

  // Coordinates (alpha_i, beta_i) of each point in the basis (p1, p2) of the
  // common line, via least squares; the cross-ratio is a ratio of the 2x2
  // minors d_ij = alpha_i beta_j - alpha_j beta_i, in which the basis choice
  // cancels.
  Eigen::Matrix<K, Eigen::Dynamic, 2> basis(p1.size(), 2);
  basis.col(0) = normalized(p1);
  basis.col(1) = normalized(p2);
  auto solver = basis.colPivHouseholderQr();
  Eigen::Matrix<K, 2, 4> ab;
  for (int i = 0; i < 4; ++i) ab.col(i) = solver.solve(normalized(pts[static_cast<size_t>(i)]));
  auto minor = [&](int i, int j) { return ab(0, i) * ab(1, j) - ab(0, j) * ab(1, i); };
  // 0-based: d42*d31 / (d41*d32)
  K num = minor(3, 1) * minor(2, 0);
  K den = minor(3, 0) * minor(2, 1);
  return {num, den};
}

/// Affine value of the cross-ratio; throws if the value is the point at
/// infinity (use cross_ratio_homogeneous when that case matters).
template <class K>
K cross_ratio(const HVec<K>& p1, const HVec<K>& p2, const HVec<K>& p3, const HVec<K>& p4) {
  auto [num, den] = cross_ratio_homogeneous(p1, p2, p3, p4);
  if (magnitude(den) < 1e-300) throw degenerate_error("cross-ratio is infinite");
  return num / den;
}

/// Apply an invertible (d+1)x(d+1) matrix to a point; covectors transform by
/// the inverse transpose.
template <class K>
HVec<K> apply_transform(const Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>& T, const HVec<K>& p) {
  return T * p;
}

template <class K>
HVec<K> apply_transform_covector(const Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>& T,
                                 const HVec<K>& c) {
  return T.inverse().transpose() * c;
}

}  // namespace billiards
