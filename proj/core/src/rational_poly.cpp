#include "billiards/caustics/rational.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace billiards {

RationalPoly::RationalPoly(Rational constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

RationalPoly RationalPoly::from_coefficients(std::vector<Rational> ascending) {
  RationalPoly p;
  p.c_ = std::move(ascending);
  p.trim();
  return p;
}

RationalPoly RationalPoly::variable() {
  return from_coefficients({Rational(0), Rational(1)});
}

void RationalPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& RationalPoly::leading() const {
  if (c_.empty()) throw degenerate_error("zero polynomial has no leading coefficient");
  return c_.back();
}

RationalPoly RationalPoly::operator+(const RationalPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return from_coefficients(std::move(r));
}

RationalPoly RationalPoly::operator-(const RationalPoly& o) const { return *this + (-o); }

RationalPoly RationalPoly::operator-() const {
  std::vector<Rational> r = c_;
  for (auto& x : r) x = -x;
  return from_coefficients(std::move(r));
}

RationalPoly RationalPoly::operator*(const RationalPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return from_coefficients(std::move(r));
}

RationalPoly RationalPoly::operator*(const Rational& s) const {
  if (s == 0) return {};
  std::vector<Rational> r = c_;
  for (auto& x : r) x *= s;
  return from_coefficients(std::move(r));
}

RationalPoly RationalPoly::pow(unsigned e) const {
  RationalPoly result(Rational(1));
  RationalPoly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

RationalPoly RationalPoly::divide_exact(const RationalPoly& divisor) const {
  if (divisor.is_zero()) throw degenerate_error("polynomial division by zero");
  std::vector<Rational> rem = c_;
  if (degree() < divisor.degree()) {
    if (is_zero()) return {};
    throw degenerate_error("polynomial division is not exact");
  }
  std::vector<Rational> quot(static_cast<size_t>(degree() - divisor.degree()) + 1, Rational(0));
  const auto& d = divisor.c_;
  for (int k = degree() - divisor.degree(); k >= 0; --k) {
    Rational q = rem[static_cast<size_t>(k + divisor.degree())] / d.back();
    quot[static_cast<size_t>(k)] = q;
    if (q != 0)
      for (size_t j = 0; j < d.size(); ++j) rem[static_cast<size_t>(k) + j] -= q * d[j];
  }
  for (const auto& r : rem)
    if (r != 0) throw degenerate_error("polynomial division is not exact");
  return from_coefficients(std::move(quot));
}

RationalPoly RationalPoly::compose(const RationalPoly& inner) const {
  RationalPoly result;
  for (size_t i = c_.size(); i-- > 0;) {
    result = result * inner + RationalPoly(c_[i]);
  }
  return result;
}

RationalPoly RationalPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return from_coefficients(std::move(r));
}

Rational RationalPoly::evaluate(const Rational& x) const {
  Rational acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::complex<double> RationalPoly::evaluate(const std::complex<double>& x) const {
  std::complex<double> acc(0.0, 0.0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].convert_to<double>();
  return acc;
}

std::vector<BigInt> RationalPoly::integer_normalized() const {
  if (is_zero()) return {};
  BigInt lcm_den(1);
  for (const auto& q : c_) lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(q));
  std::vector<BigInt> ints;
  ints.reserve(c_.size());
  for (const auto& q : c_)
    ints.push_back(boost::multiprecision::numerator(q) * (lcm_den / boost::multiprecision::denominator(q)));
  BigInt g(0);
  for (const auto& z : ints) g = boost::multiprecision::gcd(g, z);
  if (g != 0)
    for (auto& z : ints) z /= g;
  if (ints.back() < 0)
    for (auto& z : ints) z = -z;
  return ints;
}

std::string RationalPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational a = c_[i];
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    first = false;
    Rational mag = a < 0 ? Rational(-a) : a;
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) {
      if (mag != 1) os << "*";
      os << var;
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

/*
 * Fraction-free determinant. One-step Bareiss elimination keeps every
 * intermediate entry inside the polynomial ring: after eliminating column k,
 *
 *   m[i][j] <- (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / pivot_{k-1}
 *
 * and the division by the previous pivot is exact (Sylvester identity). Row
 * swaps only flip the sign. If no pivot exists in some column the determinant
 * is zero.
 */
RationalPoly bareiss_determinant(std::vector<std::vector<RationalPoly>> m) {
  const size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw geometry_error("determinant of a non-square matrix");
  if (n == 0) return RationalPoly(Rational(1));

  int sign = 1;
  RationalPoly prev(Rational(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {};
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divide_exact(prev);
      m[i][k] = {};
    }
    prev = m[k][k];
  }
  RationalPoly det = m[n - 1][n - 1];
  return sign > 0 ? det : -det;
}

std::vector<RootCluster> clustered_roots(const RationalPoly& p, double rel_tol) {
  if (p.degree() <= 0) return {};

  // Scale by the largest |coefficient| while still exact, so the conversion
  // to double cannot overflow no matter how large the integer parts are.
  Rational max_abs(0);
  for (const auto& q : p.coefficients()) {
    Rational a = q < 0 ? Rational(-q) : q;
    if (a > max_abs) max_abs = a;
  }
  std::vector<double> c;
  c.reserve(p.coefficients().size());
  for (const auto& q : p.coefficients()) c.push_back(Rational(q / max_abs).convert_to<double>());

  const int n = p.degree();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(n)];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw numerical_error("companion eigenvalue iteration failed");

  std::vector<std::complex<double>> roots(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = solver.eigenvalues()[i];

  // Greedy union into clusters at relative distance rel_tol.
  std::vector<RootCluster> clusters;
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (const auto& r : roots) {
    bool merged = false;
    for (auto& cl : clusters) {
      if (std::abs(r - cl.value) <= rel_tol * (1.0 + std::abs(cl.value))) {
        cl.value = (cl.value * static_cast<double>(cl.multiplicity) + r) /
                   static_cast<double>(cl.multiplicity + 1);
        ++cl.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({r, 1});
  }
  return clusters;
}

}  // namespace billiards
