#pragma once

#include <array>

#include "billiards/projcore/projective.hpp"

namespace billiards {

/// Coordinate of a line inside a pencil (the lines through a fixed point),
/// stored as a homogeneous pair (u:v) so the point at infinity of the chart
/// is the ordinary pair (1:0) and no case split is ever needed.
template <class K>
struct Azimuth {
  K u, v;

  static Azimuth from_value(const K& z) { return {z, K(1)}; }
  static Azimuth infinity() { return {K(1), K(0)}; }

  bool is_infinite(double eps = 1e-12) const { return magnitude(v) <= eps * (magnitude(u) + magnitude(v)); }

  /// Affine value u/v; throws for the infinite azimuth.
  K value() const {
    if (is_infinite()) throw degenerate_error("azimuth is the point at infinity");
    return u / v;
  }
};

template <class K>
bool azimuth_equal(const Azimuth<K>& a, const Azimuth<K>& b, double eps = tol::projective_eq) {
  double scale = std::max(magnitude(a.u), magnitude(a.v)) * std::max(magnitude(b.u), magnitude(b.v));
  return magnitude(a.u * b.v - a.v * b.u) <= eps * std::max(1.0, scale);
}

/// A chart on the pencil of lines through a base point of the plane: a basis
/// pair of covectors. The line of azimuth (u:v) is u*c1 + v*c2.
template <class K>
struct PencilChart {
  HVec<K> base;  ///< common point of the pencil
  HVec<K> c1, c2;

  HVec<K> line_of(const Azimuth<K>& z) const { return z.u * c1 + z.v * c2; }

  Azimuth<K> azimuth_of(const HVec<K>& line) const {
    Eigen::Matrix<K, Eigen::Dynamic, 2> basis(3, 2);
    basis.col(0) = c1;
    basis.col(1) = c2;
    Eigen::Matrix<K, 2, 1> coeff = basis.colPivHouseholderQr().solve(normalized(line));
    HVec<K> back = coeff[0] * c1 + coeff[1] * c2;
    if (proj_distance(back, line) > 1e-8)
      throw geometry_error("line does not belong to the pencil of the chart");
    return {coeff[0], coeff[1]};
  }
};

/// Numerically orthonormal chart of the pencil through p (plane only).
template <class K>
PencilChart<K> pencil_chart(const HVec<K>& p) {
  Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic> row(1, 3);
  row.row(0) = normalized(p).transpose();
  Eigen::JacobiSVD<decltype(row)> svd(row, Eigen::ComputeFullV);
  auto V = svd.matrixV();
  // A V = U Sigma, so the trailing columns of V pair to zero with p under the
  // plain (unconjugated) incidence form.
  PencilChart<K> chart;
  chart.base = p;
  chart.c1 = V.col(1);
  chart.c2 = V.col(2);
  return chart;
}

/// Chart whose azimuth equals the affine slope of the line: azimuth (u:v)
/// stands for the line v(y-y0) = u(x-x0) through the finite base point, so
/// (1:0) is the vertical line.
template <class K>
PencilChart<K> slope_pencil_chart(const HVec<K>& p_in) {
  HVec<K> p = normalized(p_in);
  if (magnitude(p[2]) < 1e-12) throw geometry_error("slope chart requires a finite base point");
  K x0 = p[0] / p[2], y0 = p[1] / p[2];
  PencilChart<K> chart;
  chart.base = p;
  chart.c1 = hvec3<K>(K(-1), K(0), x0);
  chart.c2 = hvec3<K>(K(0), K(1), -y0);
  return chart;
}

/// Cross-ratio of four azimuths read in a common chart, as a homogeneous
/// pair. Chart changes act by a shared Moebius map, so the value is
/// chart-independent.
template <class K>
std::pair<K, K> cross_ratio_azimuths(const Azimuth<K>& z1, const Azimuth<K>& z2, const Azimuth<K>& z3,
                                     const Azimuth<K>& z4) {
  auto minor = [](const Azimuth<K>& a, const Azimuth<K>& b) { return a.u * b.v - b.u * a.v; };
  K num = minor(z4, z2) * minor(z3, z1);
  K den = minor(z4, z1) * minor(z3, z2);
  return {num, den};
}

/// Harmonic conjugate of z with respect to the fixed pair (z3, z4): the image
/// of z under the unique non-trivial involution of the pencil fixing z3 and
/// z4. In an affine chart this is h(z) = ((z3+z4)z - 2 z3 z4) / (2z - (z3+z4));
/// on homogeneous pairs it is the traceless 2x2 matrix action below, which
/// needs no special case at infinity.
template <class K>
Azimuth<K> harmonic_conjugate_azimuth(const Azimuth<K>& z, const Azimuth<K>& z3, const Azimuth<K>& z4) {
  if (azimuth_equal(z3, z4)) throw degenerate_error("harmonic conjugate with coincident fixed pair");
  const K p = z3.u, q = z3.v, r = z4.u, s = z4.v;
  const K tr = p * s + q * r;
  return {tr * z.u - K(2) * p * r * z.v, K(2) * q * s * z.u - tr * z.v};
}

namespace detail {
template <class K>
void check_concurrent(const std::array<HVec<K>, 4>& ls, const HVec<K>& common) {
  for (const auto& l : ls)
    if (!incident(common, l, 1e-8)) throw geometry_error("lines are not concurrent");
}
}  // namespace detail

/// Whether four concurrent lines form a harmonic quadruple: the cross-ratio
/// of their azimuths is -1. The predicate is closed under swapping l1<->l2,
/// swapping l3<->l4, and swapping the two pairs. l1 == l2 is legal only when
/// that line also equals l3 or l4 (and is then harmonic exactly in that
/// case); l3 == l4 is rejected.
template <class K>
bool is_harmonic(const HVec<K>& l1, const HVec<K>& l2, const HVec<K>& l3, const HVec<K>& l4,
                 double eps = 1e-9) {
  if (proj_equal(l3, l4)) throw degenerate_error("harmonic test with coincident fixed pair");
  HVec<K> common = meet(l3, l4);
  detail::check_concurrent<K>({l1, l2, l3, l4}, common);
  if (proj_equal(l1, l2)) return proj_equal(l1, l3) || proj_equal(l1, l4);

  PencilChart<K> chart = pencil_chart(common);
  auto [num, den] = cross_ratio_azimuths(chart.azimuth_of(l1), chart.azimuth_of(l2),
                                         chart.azimuth_of(l3), chart.azimuth_of(l4));
  // num/den == -1  <=>  num + den == 0, scale-invariantly.
  double scale = std::max(magnitude(num), magnitude(den));
  if (scale == 0.0) return false;
  return magnitude(num + den) <= eps * scale;
}

/// Line-level harmonic conjugate: the unique line l' through the common point
/// of the pencil with (l, l', l3, l4) harmonic.
template <class K>
HVec<K> harmonic_conjugate_line(const HVec<K>& l, const HVec<K>& l3, const HVec<K>& l4) {
  if (proj_equal(l3, l4)) throw degenerate_error("harmonic conjugate with coincident fixed pair");
  HVec<K> common = meet(l3, l4);
  if (!incident(common, l, 1e-8)) throw geometry_error("line not in the pencil of the fixed pair");
  PencilChart<K> chart = pencil_chart(common);
  Azimuth<K> image = harmonic_conjugate_azimuth(chart.azimuth_of(l), chart.azimuth_of(l3),
                                                chart.azimuth_of(l4));
  return chart.line_of(image);
}

}  // namespace billiards
