// Acceptance report: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "dv/analysis.hpp"
#include "dv/reference/cache.hpp"
#include "dv/reference/oracle.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void sub(bool pass, const std::string& detail) {
  std::printf("        %s %s\n", pass ? "ok  " : "FAIL", detail.c_str());
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Simple splittable generator for the property points (independent of the
/// benchmark generator).
class Points {
 public:
  explicit Points(std::uint64_t seed) : s_(seed) {}
  double uniform(double lo, double hi) {
    s_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return lo + (hi - lo) * (static_cast<double>(z >> 11) * 0x1.0p-53);
  }

 private:
  std::uint64_t s_;
};

constexpr int kFig1Points = 10000;

double criterion_dawson(const dv::CoefficientSet& coeffs, double* x_at_max) {
  const auto series = dv::sweep_dawson_error(15.0, kFig1Points, coeffs);
  double worst = 0;
  for (std::size_t i = 0; i < series.eps.size(); ++i) {
    if (std::abs(series.eps[i]) > worst) {
      worst = std::abs(series.eps[i]);
      if (x_at_max) *x_at_max = series.xs[i];
    }
  }
  return worst;
}

void criterion_1(const dv::CoefficientSet& def, double* worst_out) {
  const auto t0 = Clock::now();
  double x_at = 0;
  *worst_out = criterion_dawson(def, &x_at);
  report(1, "Dawson error, default preset", *worst_out <= 7e-9,
         fmt("max |F - F_ref| = %.3e at x = %.4f", *worst_out, x_at) +
             fmt(" over 10^4 points on [0,15], bound 7e-9 (%.2f s)", seconds_since(t0)));
  // Informational only: the same curve over a wider range, no bound.
  const auto wide = dv::sweep_dawson_error(50.0, kFig1Points, def);
  std::printf("        info max |F - F_ref| over [0,50]: %.3e\n", wide.max_abs());
}

void criterion_2(const dv::CoefficientSet& def) {
  const auto t0 = Clock::now();
  const auto path = dv::ref::default_cache_path();
  try {
    const auto cache = dv::ref::OracleCache::load(path);
    const auto grid = dv::error_grid_voigt(dv::small_y_grid(), def, dv::cache_reference(cache));
    const double worst = *grid.max_log10();
    double x_at = 0;
    double y_at = 0;
    for (std::size_t j = 0; j < grid.ys.size(); ++j) {
      for (std::size_t i = 0; i < grid.xs.size(); ++i) {
        if (grid.at(j, i) && *grid.at(j, i) == worst) {
          x_at = grid.xs[i];
          y_at = grid.ys[j];
        }
      }
    }
    report(2, "Voigt error surface", worst <= -10.0,
           fmt("max relative error 10^%.2f at (%.3f, ", worst, x_at) + fmt("%.2e) on the 301x31 grid", y_at) +
               fmt(", bound 1e-10 (%.2f s)", seconds_since(t0)));
  } catch (const dv::Error& e) {
    report(2, "Voigt error surface", false, std::string("oracle cache ") + path.string() + ": " + e.what());
  }
}

void criterion_3(const dv::CoefficientSet& hi, double worst_default) {
  const auto t0 = Clock::now();
  const double worst_hi = criterion_dawson(hi, nullptr);
  report(3, "high-accuracy preset", worst_hi <= worst_default,
         fmt("max Dawson error %.3e (h=0.25, M=16) vs %.3e (defaults)", worst_hi, worst_default) +
             fmt(" (%.2f s)", seconds_since(t0)));
}

void criterion_4(const dv::CoefficientSet& c) {
  const double y = dv::kSmallYThreshold;
  double worst = 0;
  double x_at = 0;
  Points pts(4);
  std::vector<double> xs = dv::linspace(0.0, 15.0, 1501);
  for (int i = 0; i < 1000; ++i) xs.push_back(pts.uniform(0.0, 15.0));
  for (double x : xs) {
    const double r = dv::kappa(x, y + c.half_shift(), c);
    const double s = dv::voigt_small_y(dv::EvalPoint{x, y}, c);
    const double d = rel(r, s);
    if (d > worst) {
      worst = d;
      x_at = x;
    }
  }
  report(4, "branch continuity at y = 1e-6", worst <= 1e-9,
         fmt("max relative gap between rational and small-y forms %.3e at x = %.4f", worst, x_at) +
             fmt(" over %.0f points, bound 1e-9", static_cast<double>(xs.size())));
}

void criterion_5(const dv::CoefficientSet& c) {
  constexpr std::size_t n = 1000000;
  // Warm up, then keep the best of three runs of each.
  (void)dv::benchmark("kappa", n, 1, c);
  double best_k = 0;
  double best_s = 0;
  for (int i = 0; i < 3; ++i) {
    best_k = std::max(best_k, dv::benchmark("kappa", n, 1, c).throughput);
    best_s = std::max(best_s, dv::benchmark("voigt_small_y", n, 1, c).throughput);
  }
  const double ratio = best_s / best_k;
  report(5, "small-y throughput", ratio >= 0.5,
         fmt("voigt_small_y %.3g/s, kappa %.3g/s, ratio %.3f", best_s, best_k, ratio) + " (bound 0.5, 10^6 seeded points)");
}

void criterion_6(const dv::CoefficientSet& c) {
  bool all = true;
  auto check = [&all](bool ok, const std::string& what) {
    sub(ok, what);
    all = all && ok;
  };
  Points pts(6);

  {
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      const double x = pts.uniform(0.0, 15.0);
      const double y = c.half_shift() + pts.uniform(0.0, 15.0);
      ok = ok && dv::kappa(-x, y, c) == dv::kappa(x, y, c) && dv::lambda_fn(-x, y, c) == -dv::lambda_fn(x, y, c) &&
           dv::dawson_real(-x, c) == -dv::dawson_real(x, c);
    }
    check(ok, "kappa even, lambda and F odd on 1000 random points");
  }
  check(dv::dawson_real(0.0, c) == 0.0, "F(0) = 0");
  {
    const auto w = dv::faddeeva_w(dv::EvalPoint{0.0, 0.0}, c);
    const double d = std::max(std::abs(w.re - 1.0), std::abs(w.im));
    check(d <= 1e-8, fmt("w(0,0) = (1,0) within %.2e, bound 1e-8", d));
  }
  {
    double worst_k = 0;
    double worst_l = 0;
    double l_at = 0;
    const double two_over_sqrt_pi = 2 / std::sqrt(std::numbers::pi);
    for (double x : dv::linspace(0.0, 15.0, 301)) {
      worst_k = std::max(worst_k, rel(dv::voigt_K(dv::EvalPoint{x, 0.0}, c), std::exp(-x * x)));
      if (x == 0.0) continue;
      const double l_ref = two_over_sqrt_pi * dv::ref::dawson_oracle(x).to_double();
      const double d = rel(dv::voigt_L(dv::EvalPoint{x, 0.0}, c), l_ref);
      if (d > worst_l) {
        worst_l = d;
        l_at = x;
      }
    }
    check(worst_k <= 1e-8, fmt("K(x,0) = exp(-x^2): max relative error %.2e, bound 1e-8", worst_k));
    check(worst_l <= 1e-8,
          fmt("L(x,0) = (2/sqrt(pi)) F(x): max relative error %.2e at x = %.2f, bound 1e-8", worst_l, l_at));
  }
  {
    using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    for (double y : {0.1, 1.0}) {
      // x = tan(t) maps the Lorentzian tail onto a finite interval.
      auto f = [&](double t) {
        const double x = std::tan(t);
        const double sec = 1 / std::cos(t);
        return dv::voigt_K(dv::EvalPoint{x, y}, c) * sec * sec;
      };
      double err = 0;
      const double half = Quad::integrate(f, 0.0, std::numbers::pi / 2, 20, 1e-13, &err);
      const double d = rel(2 * half, sqrt_pi);
      check(d <= 1e-8, fmt("integral of K(x, %.1f) dx = sqrt(pi): relative error %.2e, bound 1e-8", y, d));
    }
  }
  {
    bool ok = true;
    for (int i = 0; i < 100000; ++i) {
      const double x = pts.uniform(-15.0, 15.0);
      const double y = c.half_shift() + pts.uniform(0.0, 15.0);
      const dv::RationalPoint<double> p(x, y);
      for (double beta : c.beta()) ok = ok && dv::rational_denominator(p, beta) > 0.0;
    }
    check(ok, "rational denominators positive on 1e5 random points");
  }
  report(6, "property suite", all, all ? "all properties hold" : "see failing properties above");
}

void criterion_7() {
  bool all = true;
  auto check = [&all](bool ok, const std::string& what) {
    sub(ok, what);
    all = all && ok;
  };
  namespace mp = dv::mp;
  const mp::Precision bits = mp::bits_for_digits(60);
  {
    double worst = 0;
    for (double x : {0.1, 0.9241, 2.0, 5.0, 10.0, 15.0}) {
      const auto d = mp::relative_difference(dv::ref::dawson_oracle(x), dv::ref::dawson_oracle_quadrature(x));
      worst = std::max(worst, d.to_double());
    }
    check(worst <= 1e-30, fmt("Dawson series vs quadrature at 6 points: max relative difference %.2e, bound 1e-30", worst));
  }
  {
    // Quadrature oracle against the erfc-based series, and against the
    // closed form exp(y^2) erfc(y) on the imaginary axis.
    double worst = 0;
    const std::pair<double, double> spots[] = {{1.0, 1e-7}, {0.0, 1e-7}, {0.3, 0.2}, {7.5, 5e-7},
                                               {15.0, 1e-6}, {3.0, 4.0},  {-12.0, 8.0}, {20.0, 5.0}};
    for (auto [x, y] : spots) {
      const auto q = dv::ref::w_oracle(x, y);
      const auto s = dv::ref::w_series_oracle(x, y, {300, 1e-30});
      worst = std::max({worst, mp::relative_difference(q.re, s.re).to_double(),
                        s.im.is_zero() ? mp::abs(q.im).to_double() : mp::relative_difference(q.im, s.im).to_double()});
    }
    for (double y : {1e-7, 1e-3, 1.0}) {
      const mp::Real yy(y, bits);
      const mp::Real closed = mp::exp(yy * yy) * mp::erfc(yy);
      worst = std::max(worst, mp::relative_difference(dv::ref::w_oracle(0.0, y).re, closed).to_double());
    }
    check(worst <= 1e-25, fmt("w quadrature vs erfc-based evaluation at 11 points: max relative difference %.2e, bound 1e-25", worst));
  }
  report(7, "oracle self-consistency", all, all ? "both oracle pairs agree" : "see failing checks above");
}

void criterion_8() {
  Points pts(8);
  double worst = 0;
  double r_at = 0;
  for (int i = 0; i < 20; ++i) {
    const double r = std::exp(pts.uniform(std::log(15.01), std::log(199.9)));
    const double t = pts.uniform(0.05, std::numbers::pi - 0.05);
    const double x = r * std::cos(t);
    const double y = r * std::sin(t);
    const auto ref = dv::ref::w_oracle(x, y);
    const auto w = dv::laplace_cf_converged(x, y);
    const double d = std::max(rel(w.real(), ref.re.to_double()), rel(w.imag(), ref.im.to_double()));
    if (d > worst) {
      worst = d;
      r_at = r;
    }
  }
  report(8, "continued-fraction region", worst <= 1e-13,
         fmt("max per-component relative error %.2e (at |z| = %.1f) on 20 points with 15 < |z| <= 200, bound 1e-13", worst, r_at));
}

}  // namespace

int main() {
  const auto def = dv::build_coefficients(dv::default_params());
  const auto hi = dv::build_coefficients(dv::high_accuracy_params());
  const auto t0 = Clock::now();
  double worst_default = 0;
  criterion_1(def, &worst_default);
  criterion_2(def);
  criterion_3(hi, worst_default);
  criterion_4(def);
  criterion_5(def);
  criterion_6(def);
  criterion_7();
  criterion_8();
  std::printf("%d of 8 criteria failed (%.1f s)\n", g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
