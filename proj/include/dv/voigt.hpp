#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <string>

#include "dv/coefficients.hpp"
#include "dv/constants.hpp"
#include "dv/continued_fraction.hpp"
#include "dv/error.hpp"
#include "dv/rational.hpp"

namespace dv {

/// Below (and at) this ordinate the Voigt function switches from the shifted
/// rational form to the Dawson-based small-y form.
inline constexpr double kSmallYThreshold = 1e-6;

/// A point z = x + iy of the closed upper half-plane.
template <std::floating_point T>
struct BasicEvalPoint {
  T x = 0;
  T y = 0;
};

template <std::floating_point T>
struct BasicComplexValue {
  T re = 0;
  T im = 0;

  std::complex<T> as_complex() const noexcept { return {re, im}; }
};

using EvalPoint = BasicEvalPoint<double>;
using ComplexValue = BasicComplexValue<double>;

enum class VoigtBranch {
  rational,            // kappa(x, y + varsigma/2)
  small_y,             // exp(-x^2) - (2y/sqrt(pi)) [1 - sqrt(pi) x lambda(x, varsigma/2)]
  continued_fraction,  // |z| > 15
};

constexpr const char* to_string(VoigtBranch b) noexcept {
  switch (b) {
    case VoigtBranch::rational: return "rational";
    case VoigtBranch::small_y: return "small_y";
    case VoigtBranch::continued_fraction: return "continued_fraction";
  }
  return "unknown";
}

namespace detail {

template <std::floating_point T>
void require_upper_half_plane(const char* op, const BasicEvalPoint<T>& p) {
  require_finite(op, p.x, p.y);
  if (p.y < 0) {
    throw Error(ErrorCode::negative_y, std::string(op) + ": y must be >= 0 (x=" +
                                           std::to_string(static_cast<double>(p.x)) +
                                           ", y=" + std::to_string(static_cast<double>(p.y)) + ")");
  }
}

template <std::floating_point T>
bool inside_rational_disc(const BasicEvalPoint<T>& p) noexcept {
  return std::hypot(p.x, p.y) <= static_cast<T>(kRationalRadius);
}

}  // namespace detail

/// sin(u)/u with sinc(0) = 1; a short series is used for |u| < 1e-4.
template <std::floating_point T>
T sinc(T u) noexcept {
  if (std::abs(u) < static_cast<T>(1e-4)) {
    const T u2 = u * u;
    return 1 - u2 / 6 + u2 * u2 / 120;
  }
  return std::sin(u) / u;
}

/// Dawson integral of real argument, (sqrt(pi)/2) lambda(x, varsigma/2).
template <std::floating_point T>
T dawson_real(T x, const BasicCoefficientSet<T>& c) {
  return sqrt_pi_v<T> / 2 * lambda_fn(x, c.half_shift(), c);
}

/// Which formula voigt_K uses at `p`. Requires a valid point.
template <std::floating_point T>
VoigtBranch voigt_branch(const BasicEvalPoint<T>& p) {
  detail::require_upper_half_plane("voigt_branch", p);
  if (!detail::inside_rational_disc(p)) return VoigtBranch::continued_fraction;
  if (p.y > static_cast<T>(kSmallYThreshold)) return VoigtBranch::rational;
  return VoigtBranch::small_y;
}

/// Small-y Voigt form built on the real-argument Dawson integral, keeping
/// the trigonometric factors exactly:
///
///   K ~ e^{y^2-x^2} cos(2xy) - (2 e^{y^2}/sqrt(pi)) [y sinc(2xy) - F(x) sin(2xy)]
template <std::floating_point T>
T voigt_small_y_full(const BasicEvalPoint<T>& p, const BasicCoefficientSet<T>& c) {
  detail::require_finite("voigt_small_y_full", p.x, p.y);
  const T u = 2 * p.x * p.y;
  const T y2 = p.y * p.y;
  const T dawson = dawson_real(p.x, c);
  return std::exp(y2 - p.x * p.x) * std::cos(u) -
         2 * std::exp(y2) / sqrt_pi_v<T> * (p.y * sinc(u) - dawson * std::sin(u));
}

/// Small-y Voigt form: exp(-x^2) - (2y/sqrt(pi)) [1 - sqrt(pi) x lambda(x, varsigma/2)].
template <std::floating_point T>
T voigt_small_y(const BasicEvalPoint<T>& p, const BasicCoefficientSet<T>& c) {
  detail::require_finite("voigt_small_y", p.x, p.y);
  const T lambda = lambda_fn(p.x, c.half_shift(), c);
  return std::exp(-p.x * p.x) - 2 * p.y / sqrt_pi_v<T> * (1 - sqrt_pi_v<T> * p.x * lambda);
}

/// Voigt function K(x, y) on y >= 0.
template <std::floating_point T>
T voigt_K(const BasicEvalPoint<T>& p, const BasicCoefficientSet<T>& c) {
  detail::require_upper_half_plane("voigt_K", p);
  switch (voigt_branch(p)) {
    case VoigtBranch::rational:
      return kappa(p.x, p.y + c.half_shift(), c);
    case VoigtBranch::small_y:
      return voigt_small_y(p, c);
    case VoigtBranch::continued_fraction:
      break;
  }
  return laplace_cf_converged(p.x, p.y).real();
}

/// L-function L(x, y), the imaginary part of w. The shifted rational form is
/// accurate down to y = 0, so there is no small-y branch.
template <std::floating_point T>
T voigt_L(const BasicEvalPoint<T>& p, const BasicCoefficientSet<T>& c) {
  detail::require_upper_half_plane("voigt_L", p);
  if (!detail::inside_rational_disc(p)) return laplace_cf_converged(p.x, p.y).imag();
  return lambda_fn(p.x, p.y + c.half_shift(), c);
}

/// Faddeeva function w(z) = K + iL on y >= 0.
template <std::floating_point T>
BasicComplexValue<T> faddeeva_w(const BasicEvalPoint<T>& p, const BasicCoefficientSet<T>& c) {
  detail::require_upper_half_plane("faddeeva_w", p);
  if (!detail::inside_rational_disc(p)) {
    const std::complex<T> w = laplace_cf_converged(p.x, p.y);
    return {w.real(), w.imag()};
  }
  return {voigt_K(p, c), lambda_fn(p.x, p.y + c.half_shift(), c)};
}

/// Dawson integral of complex argument, F(z) = (i sqrt(pi)/2) [exp(-z^2) - w(z)].
template <std::floating_point T>
BasicComplexValue<T> dawson_complex(const BasicEvalPoint<T>& p, const BasicCoefficientSet<T>& c) {
  detail::require_upper_half_plane("dawson_complex", p);
  const T magnitude = std::exp(p.y * p.y - p.x * p.x);
  if (!std::isfinite(magnitude)) {
    throw Error(ErrorCode::overflow, "dawson_complex: exp(-z^2) overflows at x=" + std::to_string(static_cast<double>(p.x)) +
                                         ", y=" + std::to_string(static_cast<double>(p.y)));
  }
  const T phase = 2 * p.x * p.y;
  const T gauss_re = magnitude * std::cos(phase);
  const T gauss_im = -magnitude * std::sin(phase);
  const BasicComplexValue<T> w = faddeeva_w(p, c);
  const T d_re = gauss_re - w.re;
  const T d_im = gauss_im - w.im;
  const T half_sqrt_pi = sqrt_pi_v<T> / 2;
  return {-half_sqrt_pi * d_im, half_sqrt_pi * d_re};
}

}  // namespace dv
