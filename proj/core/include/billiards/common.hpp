#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace billiards {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Ill-posed geometric input: non-collinear points where collinear ones are
/// required, incidence violations, missing transversality, and the like.
struct geometry_error : error {
  using error::error;
};

/// Input that is individually valid but degenerate for the requested
/// operation: coincident points, singular quadrics, corner hits.
struct degenerate_error : error {
  using error::error;
};

/// A numeric procedure failed to converge or exhausted its budget.
struct numerical_error : error {
  using error::error;
};

/// Default tolerances. Operations that compare quantities expose a tolerance
/// parameter defaulting to one of these; the CLI can override them globally.
namespace tol {
inline constexpr double projective_eq = 1e-10;   ///< 2x2-minor test for projective equality
inline constexpr double closure = 1e-9;          ///< orbit periodicity detection
inline constexpr double newton_residual = 1e-12; ///< chart intersection acceptance
inline constexpr double root_dedup = 1e-8;       ///< relative root clustering distance
inline constexpr double vertex_guard = 1e-9;     ///< polygon corner rejection radius
inline constexpr double transversal = 1e-8;      ///< admitted-direction transversality
}  // namespace tol

template <class K>
struct is_complex_scalar : std::false_type {};
template <class T>
struct is_complex_scalar<std::complex<T>> : std::true_type {};
template <class K>
inline constexpr bool is_complex_scalar_v = is_complex_scalar<K>::value;

/// Magnitude that works uniformly for real and complex scalars.
template <class K>
double magnitude(const K& x) {
  if constexpr (is_complex_scalar_v<K>) {
    return std::abs(x);
  } else {
    return std::abs(static_cast<double>(x));
  }
}

}  // namespace billiards
