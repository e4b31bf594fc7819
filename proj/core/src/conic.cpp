#include <algorithm>

#include "billiards/projcore/harmonic.hpp"
#include "billiards/projcore/quadratic.hpp"
#include "billiards/projcore/quadric.hpp"

namespace billiards {

std::vector<HVecC> tangent_lines_through(const HVecC& point, const QuadricC& conic) {
  if (conic.m.rows() != 3) throw geometry_error("tangent pencil construction is planar");
  if (conic.degenerate()) throw degenerate_error("tangents to a degenerate conic");
  const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic> dual = conic.m.inverse();

  PencilChart<std::complex<double>> chart = pencil_chart(point);
  auto form = [&](const HVecC& x, const HVecC& y) { return (x.transpose() * dual * y)(0, 0); };
  const std::complex<double> A = form(chart.c1, chart.c1);
  const std::complex<double> B = form(chart.c1, chart.c2);
  const std::complex<double> C = form(chart.c2, chart.c2);
  auto [r1, r2] = solve_homogeneous_quadratic(A, B, C);
  return {normalized<std::complex<double>>(r1.first * chart.c1 + r1.second * chart.c2),
          normalized<std::complex<double>>(r2.first * chart.c1 + r2.second * chart.c2)};
}

namespace {

bool focus_is_real(const HVecC& f) {
  HVecC n = normalized(f);
  for (Eigen::Index i = 0; i < n.size(); ++i)
    if (std::abs(n[i].imag()) > 1e-8) return false;
  return true;
}

std::array<double, 6> focus_sort_key(const HVecC& f) {
  HVecC n = normalized(f);
  return {focus_is_real(f) ? 0.0 : 1.0, n[0].real(), n[0].imag(), n[1].real(), n[1].imag(), n[2].real()};
}

}  // namespace

ConicPredicates conic_predicates(const QuadricC& conic) {
  if (conic.m.rows() != 3) throw geometry_error("conic predicates are planar");
  if (conic.degenerate()) throw degenerate_error("predicates of a degenerate conic");

  ConicPredicates out;
  const HVecC I = circular_point_I(), J = circular_point_J();
  out.is_circle = conic.contains(I);

  if (out.is_circle) {
    // Both circular points lie on the curve; the isotropic tangents are the
    // tangents there and they meet at the center (the pole of the line at
    // infinity), where all foci collapse.
    out.isotropic_tangents = {normalized(polar(I, conic)), normalized(polar(J, conic))};
    out.complex_foci = {normalized(pole(hvec3<std::complex<double>>({0, 0}, {0, 0}, {1, 0}), conic))};
    return out;
  }

  std::vector<HVecC> from_I = tangent_lines_through(I, conic);
  std::vector<HVecC> from_J = tangent_lines_through(J, conic);
  out.isotropic_tangents = {from_I[0], from_I[1], from_J[0], from_J[1]};

  for (const auto& ti : from_I)
    for (const auto& tj : from_J) {
      if (proj_equal(ti, tj)) continue;  // shared tangent (e.g. the line at infinity)
      out.complex_foci.push_back(normalized(meet(ti, tj)));
    }
  std::sort(out.complex_foci.begin(), out.complex_foci.end(),
            [](const HVecC& x, const HVecC& y) { return focus_sort_key(x) < focus_sort_key(y); });
  return out;
}

}  // namespace billiards
