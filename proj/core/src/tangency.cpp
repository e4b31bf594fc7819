#include "billiards/caustics/tangency.hpp"

#include <algorithm>
#include <cmath>

#include "billiards/common.hpp"
#include "billiards/projcore/quadratic.hpp"

namespace billiards {

namespace {

// Unconjugated bilinear extension of the Euclidean dot product.
std::complex<double> cdot(const Eigen::Vector2cd& x, const Eigen::Vector2cd& y) {
  return x(0) * y(0) + x(1) * y(1);
}

// Coefficients (ascending) of the product of a polynomial and a linear factor.
std::vector<double> mul_linear(const std::vector<double>& poly, double c0, double c1) {
  std::vector<double> out(poly.size() + 1, 0.0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    out[i] += poly[i] * c0;
    out[i + 1] += poly[i] * c1;
  }
  return out;
}

}  // namespace

std::complex<double> joachimsthal_invariant(const Eigen::Vector2cd& p, const Eigen::Vector2cd& v,
                                            const std::complex<double>& a, const std::complex<double>& b,
                                            double eps) {
  const std::complex<double> vv = cdot(v, v);
  const double vscale = v.cwiseAbs().maxCoeff();
  if (vscale == 0.0 || std::abs(vv) <= eps * vscale * vscale)
    throw degenerate_error("direction is isotropic; the invariant is undefined");
  const std::complex<double> on = p(0) * p(0) / a + p(1) * p(1) / b - 1.0;
  if (std::abs(on) > eps) throw geometry_error("base point does not lie on the conic");
  const std::complex<double> s = p(0) * v(0) / a + p(1) * v(1) / b;
  return s * s / vv;
}

double joachimsthal_invariant(const Eigen::Vector2d& p, const Eigen::Vector2d& v, double a, double b,
                              double eps) {
  const std::complex<double> val =
      joachimsthal_invariant(p.cast<std::complex<double>>().eval(), v.cast<std::complex<double>>().eval(),
                             std::complex<double>(a), std::complex<double>(b), eps);
  return val.real();
}

double planar_tangency_parameter(const HVecR& covector, double a, double b) {
  if (covector.size() != 3) throw geometry_error("planar line covector must have three entries");
  const double alpha = covector(0);
  const double beta = covector(1);
  const double gamma = covector(2);
  const double den = alpha * alpha + beta * beta;
  const double scale = covector.cwiseAbs().maxCoeff();
  if (scale == 0.0 || den <= 1e-14 * scale * scale)
    throw degenerate_error("line at infinity has no tangency parameter");
  return (a * alpha * alpha + b * beta * beta - gamma * gamma) / den;
}

std::vector<double> tangency_parameters(const ConfocalFamily& family, const Eigen::VectorXd& P,
                                        const Eigen::VectorXd& V) {
  const int d = static_cast<int>(family.dim());
  if (P.size() != d || V.size() != d)
    throw geometry_error("point/direction dimension does not match the confocal family");
  if (V.cwiseAbs().maxCoeff() == 0.0) throw degenerate_error("zero direction");

  // den_k(lambda) = a_k - sigma_k lambda as ascending linear coefficients.
  std::vector<double> poly(1, 0.0);
  poly.reserve(static_cast<std::size_t>(d));
  auto product_excluding = [&](int skip1, int skip2) {
    std::vector<double> prod{1.0};
    for (int k = 0; k < d; ++k) {
      if (k == skip1 || k == skip2) continue;
      const auto ku = static_cast<std::size_t>(k);
      prod = mul_linear(prod, family.a[ku], -static_cast<double>(family.sigma[ku]));
    }
    return prod;
  };

  auto accumulate = [&poly](const std::vector<double>& term, double weight) {
    if (term.size() > poly.size()) poly.resize(term.size(), 0.0);
    for (std::size_t i = 0; i < term.size(); ++i) poly[i] += weight * term[i];
  };

  for (int i = 0; i < d; ++i) accumulate(product_excluding(i, -1), V(i) * V(i));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double moment = P(i) * V(j) - P(j) * V(i);
      accumulate(product_excluding(i, j), -moment * moment);
    }

  double peak = 0.0;
  for (double c : poly) peak = std::max(peak, std::abs(c));
  const double pscale = std::max(P.cwiseAbs().maxCoeff(), 1.0);
  const double vscale = V.cwiseAbs().maxCoeff();
  if (peak <= 1e-13 * pscale * pscale * vscale * vscale)
    throw degenerate_error("tangency polynomial vanishes identically for this line");

  std::vector<double> out;
  for (const auto& root : poly_roots(poly))
    if (std::abs(root.imag()) <= 1e-8 * (1.0 + std::abs(root))) out.push_back(root.real());
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd tangency_point(const ConfocalFamily& family, const Eigen::VectorXd& P,
                               const Eigen::VectorXd& V, double lambda) {
  const int d = static_cast<int>(family.dim());
  if (P.size() != d || V.size() != d)
    throw geometry_error("point/direction dimension does not match the confocal family");
  double quad = 0.0;
  double lin = 0.0;
  for (int i = 0; i < d; ++i) {
    const double den = family.denom(static_cast<std::size_t>(i), lambda);
    if (std::abs(den) < 1e-14) throw degenerate_error("tangency parameter hits a degenerate member");
    quad += V(i) * V(i) / den;
    lin += P(i) * V(i) / den;
  }
  if (std::abs(quad) < 1e-14 * V.cwiseAbs().maxCoeff() * V.cwiseAbs().maxCoeff())
    throw degenerate_error("line is asymptotic to the family member; no finite tangency point");
  return P + (-lin / quad) * V;
}

ChordRelation converse_invariant_check(const Eigen::Vector2cd& p, const Eigen::Vector2cd& v1,
                                       const Eigen::Vector2cd& v2, const std::complex<double>& a,
                                       const std::complex<double>& b, double eps) {
  const std::complex<double> inv1 = joachimsthal_invariant(p, v1, a, b, eps);
  const std::complex<double> inv2 = joachimsthal_invariant(p, v2, a, b, eps);
  if (std::abs(inv1 - inv2) > eps * (1.0 + std::abs(inv1)))
    throw geometry_error("orbit invariants of the two directions disagree");

  // Tangent direction at p, from the gradient of x^2/a + y^2/b.
  const Eigen::Vector2cd t(-p(1) / b, p(0) / a);
  const std::complex<double> tt = cdot(t, t);
  const double tscale = t.cwiseAbs().maxCoeff();
  if (tscale == 0.0 || std::abs(tt) <= eps * tscale * tscale)
    throw geometry_error("tangent at the base point is isotropic");

  auto parallel = [&](const Eigen::Vector2cd& x, const Eigen::Vector2cd& y) {
    const std::complex<double> cross = x(0) * y(1) - x(1) * y(0);
    const double sx = x.cwiseAbs().maxCoeff();
    const double sy = y.cwiseAbs().maxCoeff();
    return std::abs(cross) <= eps * sx * sy;
  };

  if (parallel(v1, v2)) return ChordRelation::same_line;
  const Eigen::Vector2cd mirrored = (2.0 * cdot(v1, t) / tt) * t - v1;
  if (parallel(mirrored, v2)) return ChordRelation::mirror_pair;
  return ChordRelation::neither;
}

}  // namespace billiards
