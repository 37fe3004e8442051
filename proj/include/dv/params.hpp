#pragma once

#include <cmath>
#include <string>

#include "dv/error.hpp"

namespace dv {

/// Tuning constants of one rational-approximation instance.
///
/// `h` is the sampling step, `m_max` the number of summation terms in every
/// rational form, `varsigma` the shift that moves the evaluation line to
/// y + varsigma/2, and `n_terms` the half-width N of the sampling sum used to
/// build the coefficients.
struct ApproximationParams {
  double h = 0.293;
  int m_max = 12;
  double varsigma = 2.75;
  int n_terms = 23;

  friend bool operator==(const ApproximationParams&, const ApproximationParams&) = default;
};

/// h = 0.293, m_max = 12, varsigma = 2.75, N = 23.
constexpr ApproximationParams default_params() noexcept { return {0.293, 12, 2.75, 23}; }

/// h = 0.25, m_max = 16, varsigma = 2.75, N = 23.
constexpr ApproximationParams high_accuracy_params() noexcept { return {0.25, 16, 2.75, 23}; }

inline bool is_valid(const ApproximationParams& p) noexcept {
  return std::isfinite(p.h) && p.h > 0.0 && std::isfinite(p.varsigma) && p.varsigma > 0.0 &&
         p.m_max >= 1 && p.n_terms >= 1;
}

inline void validate(const ApproximationParams& p) {
  if (!is_valid(p)) {
    throw Error(ErrorCode::invalid_params,
                "approximation params require h > 0, varsigma > 0, m_max >= 1, n_terms >= 1 (got h=" +
                    std::to_string(p.h) + ", m_max=" + std::to_string(p.m_max) +
                    ", varsigma=" + std::to_string(p.varsigma) +
                    ", n_terms=" + std::to_string(p.n_terms) + ")");
  }
}

}  // namespace dv
