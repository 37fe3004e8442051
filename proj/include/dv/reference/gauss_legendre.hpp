#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "dv/reference/mp_real.hpp"

namespace dv::mp {

/// n-point Gauss-Legendre rule on [-1, 1] at a given precision.
struct GaussLegendreRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

namespace detail {

// P_n(x) and P_n'(x) by the three-term recurrence.
inline std::pair<Real, Real> legendre_with_derivative(int n, const Real& x) {
  const Precision bits = x.precision();
  Real p_prev(1L, bits);
  Real p = x;
  for (int k = 1; k < n; ++k) {
    Real next = (x * p * static_cast<long>(2 * k + 1) - p_prev * static_cast<long>(k)) / static_cast<long>(k + 1);
    p_prev = std::move(p);
    p = std::move(next);
  }
  Real one(1L, bits);
  Real dp = (x * p - p_prev) * static_cast<long>(n) / (x * x - one);
  return {std::move(p), std::move(dp)};
}

inline GaussLegendreRule compute_rule(int n, Precision bits) {
  GaussLegendreRule rule;
  rule.nodes.assign(n, Real(bits));
  rule.weights.assign(n, Real(bits));
  const Real one(1L, bits);
  const Real two(2L, bits);
  // Newton converges quadratically; stop once the update is below 2^-(bits-4).
  for (int i = 0; i < (n + 1) / 2; ++i) {
    const double guess = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    Real x(guess, bits);
    Real dp(bits);
    for (int iter = 0; iter < 200; ++iter) {
      auto [p, d] = legendre_with_derivative(n, x);
      Real dx = p / d;
      x -= dx;
      dp = std::move(d);
      if (dx.is_zero() || mpfr_get_exp(dx.raw()) < -static_cast<long>(bits) + 4) {
        dp = legendre_with_derivative(n, x).second;
        break;
      }
    }
    const Real w = two / ((one - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = Real(0L, bits);
  return rule;
}

}  // namespace detail

/// Rules are cached per thread, keyed by (n, precision).
inline const GaussLegendreRule& gauss_legendre(int n, Precision bits) {
  thread_local std::map<std::pair<int, Precision>, GaussLegendreRule> cache;
  const auto key = std::make_pair(n, bits);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, detail::compute_rule(n, bits)).first;
  return it->second;
}

}  // namespace dv::mp
