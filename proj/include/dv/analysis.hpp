#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dv/coefficients.hpp"
#include "dv/error.hpp"
#include "dv/grid.hpp"
#include "dv/reference/cache.hpp"
#include "dv/reference/oracle.hpp"
#include "dv/voigt.hpp"

namespace dv {

/// |approx - reference| / |reference|; nullopt when the reference is zero.
inline std::optional<double> relative_error(double approx, double reference) noexcept {
  if (reference == 0.0) return std::nullopt;
  return std::abs(approx - reference) / std::abs(reference);
}

// ---------------------------------------------------------------------------
// Dawson difference curve
// ---------------------------------------------------------------------------

/// eps[i] = approximation - reference at xs[i].
struct ErrorSeries {
  std::vector<double> xs;
  std::vector<double> eps;
  ApproximationParams params;

  double max_abs() const {
    double m = 0;
    for (double e : eps) m = std::max(m, std::abs(e));
    return m;
  }
};

inline ErrorSeries sweep_dawson_error(double x_max, int n_points, const CoefficientSet& coeffs,
                                      const ref::OraclePrecision& prec = {}) {
  if (!(x_max > 0.0) || !std::isfinite(x_max) || n_points < 2) {
    throw Error(ErrorCode::invalid_params, "sweep_dawson_error: requires x_max > 0 and n_points >= 2");
  }
  ErrorSeries out;
  out.params = coeffs.params();
  out.xs = linspace(0.0, x_max, n_points);
  out.eps.reserve(out.xs.size());
  for (double x : out.xs) {
    const double reference = ref::dawson_oracle(x, prec).to_double();
    out.eps.push_back(dawson_real(x, coeffs) - reference);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Voigt relative-error surface
// ---------------------------------------------------------------------------

/// log10 of a relative error that is exactly zero.
inline constexpr double kLog10DeltaFloor = -323.3062153431158;  // log10(denorm_min)

/// Reference Voigt value K_ref(x, y), or nullopt when unavailable.
using ReferenceProvider = std::function<std::optional<double>(double x, double y)>;

inline ReferenceProvider cache_reference(const ref::OracleCache& cache) {
  return [&cache](double x, double y) -> std::optional<double> {
    if (auto r = cache.lookup(x, y)) return r->k;
    return std::nullopt;
  };
}

inline ReferenceProvider live_reference(ref::OraclePrecision prec = {300, 1e-30}) {
  return [prec](double x, double y) -> std::optional<double> {
    return ref::w_series_oracle(x, y, prec).re.to_double();
  };
}

/// Tries each provider in turn.
inline ReferenceProvider first_available(std::vector<ReferenceProvider> providers) {
  return [providers = std::move(providers)](double x, double y) -> std::optional<double> {
    for (const auto& p : providers) {
      if (auto v = p(x, y)) return v;
    }
    return std::nullopt;
  };
}

/// Cell (j, i) holds log10 relative error of voigt_K at (xs[i], ys[j]) and
/// the branch that produced the value. Undefined cells (zero reference) are
/// empty optionals; exact agreement maps to kLog10DeltaFloor.
struct ErrorGrid {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<std::optional<double>> log10_delta;  // row-major, rows = ys
  std::vector<VoigtBranch> branch;                 // same layout

  std::size_t index(std::size_t j, std::size_t i) const noexcept { return j * xs.size() + i; }
  const std::optional<double>& at(std::size_t j, std::size_t i) const { return log10_delta[index(j, i)]; }

  std::optional<double> max_log10() const {
    std::optional<double> m;
    for (const auto& v : log10_delta) {
      if (v && (!m || *v > *m)) m = v;
    }
    return m;
  }

  std::size_t count(VoigtBranch b) const {
    std::size_t n = 0;
    for (auto v : branch) n += (v == b);
    return n;
  }
};

inline ErrorGrid error_grid_voigt(const GridSpec& grid, const CoefficientSet& coeffs, const ReferenceProvider& reference) {
  validate(grid);
  ErrorGrid out;
  out.xs = grid.xs();
  out.ys = grid.ys();
  out.log10_delta.resize(out.xs.size() * out.ys.size());
  out.branch.resize(out.log10_delta.size());
  for (std::size_t j = 0; j < out.ys.size(); ++j) {
    for (std::size_t i = 0; i < out.xs.size(); ++i) {
      const EvalPoint p{out.xs[i], out.ys[j]};
      const auto k_ref = reference(p.x, p.y);
      if (!k_ref) {
        throw Error(ErrorCode::missing_reference, "error_grid_voigt: no reference at x=" + std::to_string(p.x) +
                                                      ", y=" + std::to_string(p.y));
      }
      const std::size_t idx = out.index(j, i);
      out.branch[idx] = voigt_branch(p);
      const auto delta = relative_error(voigt_K(p, coeffs), *k_ref);
      if (delta) out.log10_delta[idx] = *delta > 0.0 ? std::log10(*delta) : kLog10DeltaFloor;
    }
  }
  return out;
}

inline ErrorGrid error_grid_voigt(double x_max, double y_max, int nx, int ny, const CoefficientSet& coeffs,
                                  const ReferenceProvider& reference) {
  return error_grid_voigt(GridSpec{x_max, y_max, nx, ny}, coeffs, reference);
}

// ---------------------------------------------------------------------------
// Throughput
// ---------------------------------------------------------------------------

enum class BenchOp { kappa, lambda, voigt_small_y, voigt_K, dawson_real };

inline BenchOp parse_bench_op(std::string_view label) {
  if (label == "kappa") return BenchOp::kappa;
  if (label == "lambda") return BenchOp::lambda;
  if (label == "voigt_small_y") return BenchOp::voigt_small_y;
  if (label == "voigt_K") return BenchOp::voigt_K;
  if (label == "dawson_real") return BenchOp::dawson_real;
  throw Error(ErrorCode::unknown_selector, "benchmark: unknown operation '" + std::string(label) +
                                               "' (expected kappa, lambda, voigt_small_y, voigt_K or dawson_real)");
}

constexpr std::string_view to_string(BenchOp op) noexcept {
  switch (op) {
    case BenchOp::kappa: return "kappa";
    case BenchOp::lambda: return "lambda";
    case BenchOp::voigt_small_y: return "voigt_small_y";
    case BenchOp::voigt_K: return "voigt_K";
    case BenchOp::dawson_real: return "dawson_real";
  }
  return "unknown";
}

struct TimingStats {
  std::string op_name;
  std::size_t points_evaluated = 0;
  double wall_seconds = 0;
  double throughput = 0;  // evaluations per second
  std::size_t repetitions = 0;
  double checksum = 0;    // sum of all results; keeps the loop observable
};

inline constexpr std::uint64_t kBenchmarkSeed = 0x9E3779B97F4A7C15ULL;
inline constexpr std::size_t kMinBenchmarkPoints = 10000;

/// Benchmark points: x uniform on [0, 15), y uniform on [0, 1e-6), drawn from
/// mt19937_64 seeded with `seed` (53-bit mantissa construction, so the set
/// is identical on every platform).
inline std::vector<EvalPoint> benchmark_points(std::size_t n, std::uint64_t seed = kBenchmarkSeed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<EvalPoint> pts(n);
  for (auto& p : pts) {
    p.x = 15.0 * unit();
    p.y = kSmallYThreshold * unit();
  }
  return pts;
}

/// Single-threaded throughput of one operation over the seeded point set.
inline TimingStats benchmark(std::string_view op_selector, std::size_t n_points, std::size_t repetitions,
                             const CoefficientSet& coeffs, std::uint64_t seed = kBenchmarkSeed) {
  const BenchOp op = parse_bench_op(op_selector);
  if (n_points < kMinBenchmarkPoints || repetitions < 1) {
    throw Error(ErrorCode::invalid_params, "benchmark: requires n_points >= 10000 and repetitions >= 1");
  }
  const std::vector<EvalPoint> pts = benchmark_points(n_points, seed);
  const double shift = coeffs.half_shift();

  auto run = [&](auto&& fn) {
    double acc = 0;
    for (std::size_t r = 0; r < repetitions; ++r) {
      for (const EvalPoint& p : pts) acc += fn(p);
    }
    return acc;
  };

  const auto start = std::chrono::steady_clock::now();
  double acc = 0;
  switch (op) {
    case BenchOp::kappa: acc = run([&](const EvalPoint& p) { return kappa(p.x, p.y + shift, coeffs); }); break;
    case BenchOp::lambda: acc = run([&](const EvalPoint& p) { return lambda_fn(p.x, p.y + shift, coeffs); }); break;
    case BenchOp::voigt_small_y: acc = run([&](const EvalPoint& p) { return voigt_small_y(p, coeffs); }); break;
    case BenchOp::voigt_K: acc = run([&](const EvalPoint& p) { return voigt_K(p, coeffs); }); break;
    case BenchOp::dawson_real: acc = run([&](const EvalPoint& p) { return dawson_real(p.x, coeffs); }); break;
  }
  const auto stop = std::chrono::steady_clock::now();
  volatile double sink = acc;
  (void)sink;

  TimingStats t;
  t.op_name = std::string(to_string(op));
  t.points_evaluated = n_points;
  t.repetitions = repetitions;
  t.wall_seconds = std::max(std::chrono::duration<double>(stop - start).count(), 1e-9);
  t.throughput = static_cast<double>(n_points) * static_cast<double>(repetitions) / t.wall_seconds;
  t.checksum = acc;
  return t;
}

}  // namespace dv
