#pragma once

// Slow arbitrary-precision oracles for the Dawson integral and the Faddeeva
// function. Nothing here depends on the double-precision fast path.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dv/error.hpp"
#include "dv/reference/gauss_legendre.hpp"
#include "dv/reference/mp_real.hpp"

namespace dv::ref {

struct OraclePrecision {
  int working_digits = 50;         // decimal digits carried beyond any cancellation guard
  double target_rel_error = 1e-30; // accepted relative error of each returned component
};

inline void validate(const OraclePrecision& p) {
  if (p.working_digits < 50 || !(p.target_rel_error >= 1e-30) || !(p.target_rel_error < 1.0)) {
    throw Error(ErrorCode::invalid_params, "oracle precision requires working_digits >= 50 and 1e-30 <= target < 1");
  }
}

inline constexpr double kLog10E = 0.43429448190325182765;

/// Upper limit of |x| for the Dawson oracles.
inline constexpr double kDawsonMaxAbsX = 100.0;
/// Upper limit of |z| for the quadrature Faddeeva oracle.
inline constexpr double kQuadratureMaxAbsZ = 200.0;
/// Upper limit of |z| for the Maclaurin-series Faddeeva oracle.
inline constexpr double kSeriesMaxAbsZ = 30.0;

namespace detail {

inline long target_digits(const OraclePrecision& p) {
  return static_cast<long>(std::ceil(-std::log10(p.target_rel_error)));
}

// Binary exponent; zero maps to a very negative value.
inline long exponent_of(const mp::Real& v) {
  if (v.is_zero()) return -(1L << 40);
  return mpfr_get_exp(v.raw());
}

inline long max_exponent(const mp::Complex& v) { return std::max(exponent_of(v.re), exponent_of(v.im)); }

inline bool components_agree(const mp::Complex& coarse, const mp::Complex& fine, const mp::Real& tol) {
  auto agree = [&](const mp::Real& a, const mp::Real& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return mp::abs(a - b) <= tol * mp::abs(b);
  };
  return agree(coarse.re, fine.re) && agree(coarse.im, fine.im);
}

inline void require_finite(const char* op, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorCode::nonfinite_input, std::string(op) + ": nonfinite input");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Dawson integral of real argument
// ---------------------------------------------------------------------------

/// Alternating Maclaurin series
///   F(x) = sum_{n>=0} (-2)^n x^{2n+1} / (1*3*5*...*(2n+1)),
/// carried with x^2 log10(e) extra guard digits to absorb the cancellation.
inline mp::Real dawson_oracle(double x, const OraclePrecision& prec = {}) {
  validate(prec);
  detail::require_finite("dawson_oracle", x, 0.0);
  if (std::abs(x) > kDawsonMaxAbsX) {
    throw Error(ErrorCode::domain, "dawson_oracle: |x| must be <= 100, got " + std::to_string(x));
  }
  const long guard = static_cast<long>(std::ceil(x * x * kLog10E));
  const long digits = prec.working_digits + guard + 10;
  const mp::Precision bits = mp::bits_for_digits(digits);
  const mp::Real xr(x, bits);
  if (x == 0.0) return xr;

  const mp::Real minus_two_x2 = xr * xr * -2L;
  mp::Real term = xr;
  mp::Real sum = xr;
  // Stop once past the peak term and below 10^-(working_digits+10) of the sum.
  const long drop_bits = static_cast<long>(mp::bits_for_digits(prec.working_digits + 10));
  for (long n = 0;; ++n) {
    term *= minus_two_x2;
    term /= 2 * n + 3;
    sum += term;
    if (static_cast<double>(n) > x * x && detail::exponent_of(term) < detail::exponent_of(sum) - drop_bits) break;
  }
  return sum;
}

/// Independent route: F(x) = integral_0^x exp(t^2 - x^2) dt, rewritten with
/// u = x - t as integral_0^x exp(-u (2x - u)) du and integrated by
/// Gauss-Legendre panels; the panel count is doubled once and both results
/// must agree to the target.
inline mp::Real dawson_oracle_quadrature(double x, const OraclePrecision& prec = {}) {
  validate(prec);
  detail::require_finite("dawson_oracle_quadrature", x, 0.0);
  if (std::abs(x) > kDawsonMaxAbsX) {
    throw Error(ErrorCode::domain, "dawson_oracle_quadrature: |x| must be <= 100, got " + std::to_string(x));
  }
  const double ax = std::abs(x);
  const long digits = prec.working_digits + 15;
  const mp::Precision bits = mp::bits_for_digits(digits);
  if (ax == 0.0) return mp::Real(0L, bits);

  const mp::Real upper(ax, bits);
  const mp::Real two_x = upper * 2L;
  const double width = std::min(0.25, 1.0 / (2.0 * ax));
  const long panels = static_cast<long>(std::ceil(ax / width));

  auto integrate = [&](long n_panels, int order) {
    const auto& rule = mp::gauss_legendre(order, bits);
    const mp::Real h = upper / n_panels;
    const mp::Real half_h = h / 2L;
    mp::Real total(bits);
    for (long j = 0; j < n_panels; ++j) {
      const mp::Real mid = h * j + half_h;
      for (int k = 0; k < order; ++k) {
        const mp::Real u = mid + half_h * rule.nodes[k];
        total += rule.weights[k] * mp::exp(-(u * (two_x - u)));
      }
    }
    return total * half_h;
  };

  const mp::Real tol(prec.target_rel_error, bits);
  for (int order = 24; order <= 96; order += 24) {
    mp::Real coarse = integrate(panels, order);
    mp::Real fine = integrate(2 * panels, order);
    if (mp::abs(coarse - fine) <= tol * mp::abs(fine)) return x < 0 ? -fine : fine;
  }
  throw Error(ErrorCode::precision_unreachable, "dawson_oracle_quadrature: refinement check failed at x=" + std::to_string(x));
}

// ---------------------------------------------------------------------------
// Faddeeva function w(z) = K + iL, y >= 0
// ---------------------------------------------------------------------------

namespace detail {

// Decimal digits lost to cancellation when K is recovered from an O(1)
// oscillatory integrand: K is never much smaller than min(exp(-x^2), y/|z|^2).
inline long cancellation_guard(double x, double y) {
  const double gauss_digits = x * x * kLog10E;
  double guard = gauss_digits;
  if (y > 0.0) guard = std::min(gauss_digits, std::log10((x * x + y * y + 1.0) / y) + 1.0);
  if (x != 0.0 && std::abs(x) < 1.0) guard += -std::log10(std::abs(x));
  return static_cast<long>(std::ceil(std::max(guard, 0.0)));
}

// log10 of the Gauss-Legendre error bound for one panel of width `h` when
// the 2n-th derivative is bounded by omega^{2n}.
inline double gl_error_log10(int n, double h, double omega) {
  const double ln = (2.0 * n + 1) * std::log(h) + 4.0 * std::lgamma(n + 1.0) - 3.0 * std::lgamma(2.0 * n + 1.0) -
                    std::log(2.0 * n + 1) + 2.0 * n * std::log(omega);
  return ln / std::numbers::ln10;
}

}  // namespace detail

/// w(x + iy) from w = (1/sqrt(pi)) integral_0^inf exp(-t^2/4) exp(-yt) exp(ixt) dt.
///
/// The integral is truncated at T with exp(-T^2/4 - yT) below the working
/// precision and split into Gauss-Legendre panels, at least ten per
/// oscillation period 2 pi / x. The panel count is then doubled and both
/// results must agree to the target in each component; otherwise the node
/// count grows and the check is repeated.
inline mp::Complex w_oracle(double x, double y, const OraclePrecision& prec = {}) {
  validate(prec);
  detail::require_finite("w_oracle", x, y);
  if (y < 0.0) throw Error(ErrorCode::negative_y, "w_oracle: y must be >= 0, got " + std::to_string(y));
  if (std::hypot(x, y) > kQuadratureMaxAbsZ) {
    throw Error(ErrorCode::domain, "w_oracle: |z| must be <= 200 (x=" + std::to_string(x) + ", y=" + std::to_string(y) + ")");
  }

  const double ax = std::abs(x);
  const long guard = detail::cancellation_guard(x, y);
  const long digits = prec.working_digits + guard + 10;
  const double ln_cut = (static_cast<double>(digits) + 5.0) * std::numbers::ln10;
  const double upper = -2.0 * y + 2.0 * std::sqrt(y * y + ln_cut);

  double width = 0.5;
  if (ax > 0.0) width = std::min(width, 2.0 * std::numbers::pi / (10.0 * ax));
  if (y > 1.0) width = std::min(width, 1.0 / y);
  const long panels = static_cast<long>(std::ceil(upper / width));
  const double omega = ax + y + upper / 2.0 + 1.0;
  int order = 8;
  while (order < 200 && detail::gl_error_log10(order, upper / static_cast<double>(panels), omega) > -(digits + 5.0)) {
    order += 2;
  }

  const mp::Precision bits = mp::bits_for_digits(digits + static_cast<long>(std::log10(4.0 * panels)) + 2);
  const mp::Real xr(x, bits);
  const mp::Real yr(y, bits);
  const mp::Real t_max(upper, bits);

  auto integrate = [&](long n_panels, int n_nodes) {
    const auto& rule = mp::gauss_legendre(n_nodes, bits);
    const mp::Real h = t_max / n_panels;
    const mp::Real half_h = h / 2L;
    const mp::Real one(1L, bits);

    // f(a + s) = [exp(-a^2/4 - y a) e^{ixa}] [exp(-s^2/4 - y s) e^{ixs}] exp(-a s / 2),
    // with the last factor advanced panel to panel as a power of exp(-h s / 2).
    std::vector<mp::Complex> node_factor;
    std::vector<mp::Real> step;
    std::vector<mp::Real> power(n_nodes, one);
    node_factor.reserve(n_nodes);
    step.reserve(n_nodes);
    for (int k = 0; k < n_nodes; ++k) {
      const mp::Real s = half_h * (one + rule.nodes[k]);
      mp::Complex f = mp::exp(mp::Complex(-(s * s / 4L) - yr * s, xr * s));
      f *= rule.weights[k];
      node_factor.push_back(std::move(f));
      step.push_back(mp::exp(-(h * s / 2L)));
    }

    mp::Complex total(bits);
    mp::Complex panel_sum(bits);
    mp::Real tmp(bits);
    for (long j = 0; j < n_panels; ++j) {
      const mp::Real a = h * j;
      mpfr_set_zero(panel_sum.re.raw(), 1);
      mpfr_set_zero(panel_sum.im.raw(), 1);
      for (int k = 0; k < n_nodes; ++k) {
        mpfr_mul(tmp.raw(), node_factor[k].re.raw(), power[k].raw(), MPFR_RNDN);
        mpfr_add(panel_sum.re.raw(), panel_sum.re.raw(), tmp.raw(), MPFR_RNDN);
        mpfr_mul(tmp.raw(), node_factor[k].im.raw(), power[k].raw(), MPFR_RNDN);
        mpfr_add(panel_sum.im.raw(), panel_sum.im.raw(), tmp.raw(), MPFR_RNDN);
        mpfr_mul(power[k].raw(), power[k].raw(), step[k].raw(), MPFR_RNDN);
      }
      const mp::Complex start = mp::exp(mp::Complex(-(a * a / 4L) - yr * a, xr * a));
      total += start * panel_sum;
    }
    total *= half_h / mp::sqrt(mp::pi(bits));
    return total;
  };

  const mp::Real tol(prec.target_rel_error, bits);
  for (int attempt = 0; attempt < 4; ++attempt) {
    mp::Complex coarse = integrate(panels, order);
    mp::Complex fine = integrate(2 * panels, order);
    if (detail::components_agree(coarse, fine, tol)) return fine;
    order += order / 2;
  }
  throw Error(ErrorCode::precision_unreachable,
              "w_oracle: refinement check failed at x=" + std::to_string(x) + ", y=" + std::to_string(y));
}

/// Second, independent route for w: w(z) = exp(-z^2) erfc(-iz), with
///   erfc(-iz) = 1 + (2i/sqrt(pi)) sum_{n>=0} z^{2n+1} / (n! (2n+1)).
/// The series terms reach exp(|z|^2) before the exp(-z^2) factor brings
/// the result back to O(1), so the working precision absorbs up to
/// (x^2 + 2 y^2) log10(e) digits of cancellation.
inline mp::Complex w_series_oracle(double x, double y, const OraclePrecision& prec = {}) {
  validate(prec);
  detail::require_finite("w_series_oracle", x, y);
  if (y < 0.0) throw Error(ErrorCode::negative_y, "w_series_oracle: y must be >= 0, got " + std::to_string(y));
  if (std::hypot(x, y) > kSeriesMaxAbsZ) {
    throw Error(ErrorCode::domain, "w_series_oracle: |z| must be <= 30 (x=" + std::to_string(x) + ", y=" + std::to_string(y) + ")");
  }
  const long guard = static_cast<long>(std::ceil((x * x + 2.0 * y * y) * kLog10E));
  const long digits = std::max<long>(prec.working_digits, detail::target_digits(prec) + guard + 10);
  const mp::Precision bits = mp::bits_for_digits(digits);
  if (x == 0.0 && y == 0.0) return mp::Complex(mp::Real(1L, bits), mp::Real(0L, bits));

  const mp::Complex z(mp::Real(x, bits), mp::Real(y, bits));
  const mp::Complex z2 = z * z;
  mp::Complex term = z;
  mp::Complex sum = z;
  const double abs_z2 = x * x + y * y;
  const long drop_bits = static_cast<long>(mp::bits_for_digits(digits + 5));
  for (long n = 0;; ++n) {
    term *= z2;
    term /= n + 1;
    mp::Complex contribution = term;
    contribution /= 2 * n + 3;
    sum += contribution;
    if (static_cast<double>(n) > abs_z2 && detail::max_exponent(contribution) < detail::max_exponent(sum) - drop_bits) break;
  }

  const mp::Real two_over_sqrt_pi = mp::Real(2L, bits) / mp::sqrt(mp::pi(bits));
  // 1 + (2i/sqrt(pi)) S
  mp::Complex bracket(mp::Real(1L, bits) - two_over_sqrt_pi * sum.im, two_over_sqrt_pi * sum.re);
  const mp::Complex gauss = mp::exp(mp::Complex(-(z2.re), -(z2.im)));
  return gauss * bracket;
}

}  // namespace dv::ref
