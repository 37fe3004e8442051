#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "dv/coefficients.hpp"
#include "dv/error.hpp"

namespace dv {

namespace detail {

template <std::floating_point T>
void require_finite(const char* op, T x, T y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorCode::nonfinite_input,
                std::string(op) + ": nonfinite input (x=" + std::to_string(static_cast<double>(x)) +
                    ", y=" + std::to_string(static_cast<double>(y)) + ")");
  }
}

}  // namespace detail

/// Per-point quantities shared by every term of the rational sums.
template <std::floating_point T>
struct RationalPoint {
  T x;
  T y;
  T x2;
  T y2;
  T r2;    // x^2 + y^2
  T diff;  // y^2 - x^2
  T r4;    // (x^2 + y^2)^2

  RationalPoint(T x_, T y_) noexcept
      : x(x_), y(y_), x2(x_ * x_), y2(y_ * y_), r2(x2 + y2), diff(y2 - x2), r4(r2 * r2) {}
};

/// beta^2 + 2 beta (y^2 - x^2) + (x^2 + y^2)^2, the common denominator of the
/// m-th term. Equal to (beta + y^2 - x^2)^2 + 4 x^2 y^2, hence strictly
/// positive whenever y > 0.
template <std::floating_point T>
constexpr T rational_denominator(const RationalPoint<T>& p, T beta) noexcept {
  return beta * beta + 2 * beta * p.diff + p.r4;
}

/// Rational approximation of the Voigt function. `y_shifted` is the already
/// shifted ordinate, i.e. K(x, y) ~ kappa(x, y + varsigma/2).
template <std::floating_point T>
T kappa(T x, T y_shifted, const BasicCoefficientSet<T>& c) {
  detail::require_finite("kappa", x, y_shifted);
  const RationalPoint<T> p(x, y_shifted);
  const auto alpha = c.alpha();
  const auto beta = c.beta();
  const auto gamma = c.gamma();
  T sum = 0;
  for (int m = 0; m < c.size(); ++m) {
    const T num = alpha[m] * (beta[m] + p.diff) + gamma[m] * p.y * (beta[m] + p.r2);
    sum += num / rational_denominator(p, beta[m]);
  }
  return sum;
}

/// Rational approximation of the L-function (imaginary part of w). As with
/// kappa, L(x, y) ~ lambda_fn(x, y + varsigma/2).
template <std::floating_point T>
T lambda_fn(T x, T y_shifted, const BasicCoefficientSet<T>& c) {
  detail::require_finite("lambda_fn", x, y_shifted);
  const RationalPoint<T> p(x, y_shifted);
  const auto alpha = c.alpha();
  const auto beta = c.beta();
  const auto gamma = c.gamma();
  T sum = 0;
  for (int m = 0; m < c.size(); ++m) {
    const T num = p.x * (2 * alpha[m] * p.y + gamma[m] * (p.r2 - beta[m]));
    sum += num / rational_denominator(p, beta[m]);
  }
  return sum;
}

}  // namespace dv
