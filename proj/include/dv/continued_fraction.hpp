#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <string>

#include "dv/constants.hpp"
#include "dv/error.hpp"

namespace dv {

/// Radius beyond which the continued fraction replaces the rational forms.
inline constexpr double kRationalRadius = 15.0;

/// Laplace continued fraction for w(z), evaluated bottom-up with `depth`
/// partial numerators:
///
///   w(z) = (i/sqrt(pi)) / (z - (1/2) / (z - 1 / (z - (3/2) / (z - ...))))
///
/// Only valid outside the rational-path disc |z| > 15.
template <std::floating_point T>
std::complex<T> laplace_cf(T x, T y, int depth) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorCode::nonfinite_input, "laplace_cf: nonfinite input");
  }
  if (depth < 1) {
    throw Error(ErrorCode::domain, "laplace_cf: depth must be >= 1, got " + std::to_string(depth));
  }
  if (!(std::hypot(x, y) > static_cast<T>(kRationalRadius))) {
    throw Error(ErrorCode::domain, "laplace_cf: requires |x + iy| > 15 (x=" + std::to_string(static_cast<double>(x)) +
                                       ", y=" + std::to_string(static_cast<double>(y)) + ")");
  }
  const std::complex<T> z(x, y);
  std::complex<T> tail = z;
  for (int k = depth; k >= 1; --k) {
    tail = z - (static_cast<T>(k) / 2) / tail;
  }
  return std::complex<T>(0, 1 / sqrt_pi_v<T>) / tail;
}

struct LaplaceCfOptions {
  int initial_depth = 4;
  int max_depth = 64;
  double rel_tol = 1e-14;
};

namespace detail {

template <std::floating_point T>
bool component_converged(T prev, T next, T tol) {
  return std::abs(next - prev) <= tol * std::abs(next);
}

}  // namespace detail

/// Doubles the depth from `initial_depth` until two successive depths agree
/// to `rel_tol` in each component. Throws no_convergence past `max_depth`.
template <std::floating_point T>
std::complex<T> laplace_cf_converged(T x, T y, const LaplaceCfOptions& opt = {}) {
  const T tol = static_cast<T>(opt.rel_tol);
  int depth = opt.initial_depth;
  std::complex<T> prev = laplace_cf(x, y, depth);
  while (depth < opt.max_depth) {
    depth *= 2;
    const std::complex<T> next = laplace_cf(x, y, depth);
    if (detail::component_converged(prev.real(), next.real(), tol) &&
        detail::component_converged(prev.imag(), next.imag(), tol)) {
      return next;
    }
    prev = next;
  }
  throw Error(ErrorCode::no_convergence, "laplace_cf: no convergence by depth " + std::to_string(opt.max_depth) +
                                             " at x=" + std::to_string(static_cast<double>(x)) +
                                             ", y=" + std::to_string(static_cast<double>(y)));
}

}  // namespace dv
