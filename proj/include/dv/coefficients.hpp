#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dv/constants.hpp"
#include "dv/error.hpp"
#include "dv/params.hpp"

namespace dv {

/// Precomputed coefficient sequences alpha_m, beta_m, gamma_m (m = 1..m_max)
/// consumed by every rational form.
///
/// The exponential-series representation of exp(-t^2) that underlies the
/// rational forms is usually written with A_m, B_m and C_m. They are the same
/// numbers under another name and are never stored separately:
///
///   A_m   = alpha_m
///   B_m   = -i * gamma_m
///   C_m^2 = beta_m
///
/// Instances are immutable after construction and can be shared freely
/// between threads. Indexing through the accessors is zero-based.
template <std::floating_point T>
class BasicCoefficientSet {
 public:
  const ApproximationParams& params() const noexcept { return params_; }
  int size() const noexcept { return params_.m_max; }

  std::span<const T> alpha() const noexcept { return alpha_; }
  std::span<const T> beta() const noexcept { return beta_; }
  std::span<const T> gamma() const noexcept { return gamma_; }

  /// varsigma / 2, the shift applied to y by every rational evaluation.
  T half_shift() const noexcept { return half_shift_; }

 private:
  template <std::floating_point U>
  friend BasicCoefficientSet<U> build_coefficients(const ApproximationParams& params);

  ApproximationParams params_;
  T half_shift_ = 0;
  std::vector<T> alpha_;
  std::vector<T> beta_;
  std::vector<T> gamma_;
};

using CoefficientSet = BasicCoefficientSet<double>;

/// Builds the coefficient sequences for `params`.
///
/// For each m the sampling sums run over n = -N, ..., N in ascending order
/// with weight exp(varsigma^2/4 - n^2 h^2) evaluated as one exponential per
/// term, so two builds from the same params are bit-identical.
template <std::floating_point T = double>
BasicCoefficientSet<T> build_coefficients(const ApproximationParams& params) {
  validate(params);

  constexpr T pi = std::numbers::pi_v<T>;
  constexpr T sqrt_pi = sqrt_pi_v<T>;
  const T h = static_cast<T>(params.h);
  const T varsigma = static_cast<T>(params.varsigma);
  const T m_max = static_cast<T>(params.m_max);
  const int n_terms = params.n_terms;

  BasicCoefficientSet<T> out;
  out.params_ = params;
  out.half_shift_ = varsigma / 2;
  out.alpha_.resize(params.m_max);
  out.beta_.resize(params.m_max);
  out.gamma_.resize(params.m_max);

  const T shift_sq = varsigma * varsigma / 4;
  for (int m = 1; m <= params.m_max; ++m) {
    const T m_half = static_cast<T>(m) - T(0.5);
    const T freq = pi * m_half / (m_max * h);
    T sin_sum = 0;
    T cos_sum = 0;
    for (int n = -n_terms; n <= n_terms; ++n) {
      const T nh = static_cast<T>(n) * h;
      const T weight = std::exp(shift_sq - nh * nh);
      if (!std::isfinite(weight)) {
        throw Error(ErrorCode::overflow, "build_coefficients: exp(varsigma^2/4 - n^2 h^2) is not finite for varsigma=" +
                                             std::to_string(params.varsigma));
      }
      const T arg = freq * (nh + varsigma / 2);
      sin_sum += weight * std::sin(arg);
      cos_sum += weight * std::cos(arg);
    }
    const T beta_root = pi * m_half / (2 * m_max * h);
    out.alpha_[m - 1] = sqrt_pi * m_half / (2 * m_max * m_max * h) * sin_sum;
    out.beta_[m - 1] = beta_root * beta_root;
    out.gamma_[m - 1] = cos_sum / (m_max * sqrt_pi);
    if (!std::isfinite(out.alpha_[m - 1]) || !std::isfinite(out.gamma_[m - 1]) ||
        !std::isfinite(out.beta_[m - 1])) {
      throw Error(ErrorCode::overflow, "build_coefficients: coefficient " + std::to_string(m) + " is not finite");
    }
  }
  return out;
}

}  // namespace dv
