#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>
#include <utility>
#include <vector>

#include "billiards/common.hpp"

namespace billiards {

/// Solve the homogeneous quadratic A x^2 + 2B xy + C y^2 = 0 for the two
/// projective roots (x:y), working over the real or complex field. The
/// degree-dropping cases (A or C vanishing) produce the roots (0:1) / (1:0)
/// explicitly, and the better-conditioned branch is chosen so no catastrophic
/// cancellation occurs. Throws degenerate_error if the form vanishes
/// identically (every (x:y) is a root).
template <class K>
std::pair<std::pair<K, K>, std::pair<K, K>> solve_homogeneous_quadratic(const K& A, const K& B,
                                                                        const K& C) {
  const double ma = magnitude(A), mb = magnitude(B), mc = magnitude(C);
  const double scale = std::max({ma, mb, mc});
  if (scale == 0.0) throw degenerate_error("identically zero quadratic form");
  const double eps = 1e-14 * scale;

  if (ma <= eps && mc <= eps) return {{K(1), K(0)}, {K(0), K(1)}};
  if (ma <= eps) {
    // 2B xy + C y^2 = 0: roots (1:0) and (C : -2B).
    return {{K(1), K(0)}, {C, K(-2) * B}};
  }
  if (mc <= eps) {
    // A x^2 + 2B xy = 0: roots (0:1) and (-2B : A).
    return {{K(0), K(1)}, {K(-2) * B, A}};
  }

  using std::sqrt;
  K disc = B * B - A * C;
  K sd;
  if constexpr (is_complex_scalar_v<K>) {
    sd = sqrt(disc);
  } else {
    if (disc < K(0)) throw degenerate_error("real quadratic with complex roots");
    sd = sqrt(disc);
  }
  // First root with the larger numerator, second from the root sum -2B/A.
  K q = (magnitude(-B + sd) >= magnitude(-B - sd)) ? (-B + sd) : (-B - sd);
  K x1 = q / A;
  K x2 = K(-2) * B / A - x1;
  return {{x1, K(1)}, {x2, K(1)}};
}

/// Real-coefficient variant that permits complex roots, returned over the
/// complex field.
inline std::pair<std::pair<std::complex<double>, std::complex<double>>,
                 std::pair<std::complex<double>, std::complex<double>>>
solve_homogeneous_quadratic_complexified(double A, double B, double C) {
  using C64 = std::complex<double>;
  return solve_homogeneous_quadratic<C64>(C64(A), C64(B), C64(C));
}

/// All complex roots of a real-coefficient polynomial given by ascending
/// coefficients, via the companion-matrix eigenvalues. Trailing zero
/// coefficients are dropped; a constant (or identically zero) input throws
/// degenerate_error.
inline std::vector<std::complex<double>> poly_roots(std::vector<double> coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.size() <= 1) throw degenerate_error("polynomial has no well-defined roots");
  const int n = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw numerical_error("companion eigensolver failed");
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return roots;
}

}  // namespace billiards
