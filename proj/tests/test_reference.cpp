#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "dv/grid.hpp"
#include "dv/reference/cache.hpp"
#include "dv/reference/gauss_legendre.hpp"
#include "dv/reference/oracle.hpp"

namespace {

namespace mp = dv::mp;
namespace ref = dv::ref;

const mp::Precision kBits = mp::bits_for_digits(60);

bool close(const mp::Real& a, const mp::Real& b, double tol) {
  return mp::relative_difference(a, b) <= mp::Real(tol, kBits);
}

::testing::AssertionResult rel_within(const mp::Real& a, const mp::Real& b, double tol) {
  if (close(a, b, tol)) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << a.str(40) << " vs " << b.str(40) << " (rel "
                                       << mp::relative_difference(a, b).str(3) << ")";
}

TEST(MpReal, ArithmeticAndPrecision) {
  const mp::Real a(1L, 200);
  const mp::Real third = a / mp::Real(3L, 200);
  EXPECT_EQ(third.precision(), 200);
  EXPECT_EQ(third.str(10), "3.333333333e-01");
  const mp::Real mixed = mp::Real(1.0, 64) + mp::Real(1.0, 300);
  EXPECT_EQ(mixed.precision(), 300);
  EXPECT_EQ(mp::Real("2.5", 128).to_double(), 2.5);
  EXPECT_TRUE(mp::Real(0L, 64).is_zero());
  EXPECT_THROW(mp::Real("not-a-number", 64), std::invalid_argument);
}

TEST(GaussLegendre, WeightsAndExactness) {
  const auto& rule = mp::gauss_legendre(12, kBits);
  mp::Real wsum(0L, kBits);
  for (const auto& w : rule.weights) wsum += w;
  EXPECT_TRUE(rel_within(wsum, mp::Real(2L, kBits), 1e-50));
  // Exact for x^22: integral over [-1, 1] is 2/23.
  mp::Real integral(0L, kBits);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    mp::Real p(1L, kBits);
    for (int k = 0; k < 22; ++k) p *= rule.nodes[i];
    integral += rule.weights[i] * p;
  }
  EXPECT_TRUE(rel_within(integral, mp::Real(2L, kBits) / mp::Real(23L, kBits), 1e-50));
}

TEST(DawsonOracle, KnownValue) {
  EXPECT_TRUE(ref::dawson_oracle(0.0).is_zero());
  const mp::Real known("0.5380795069127684191363874204075567547920", kBits);
  EXPECT_TRUE(rel_within(ref::dawson_oracle(1.0), known, 1e-38));
  EXPECT_TRUE(rel_within(ref::dawson_oracle(-1.0), -known, 1e-38));
}

TEST(DawsonOracle, SeriesAndQuadratureAgree) {
  for (double x : {0.1, 0.9241, 2.0, 5.0, 10.0, 15.0}) {
    EXPECT_TRUE(rel_within(ref::dawson_oracle(x), ref::dawson_oracle_quadrature(x), 1e-30)) << "x=" << x;
  }
}

TEST(DawsonOracle, RejectsBadArguments) {
  EXPECT_THROW((void)ref::dawson_oracle(101.0), dv::Error);
  EXPECT_THROW((void)ref::dawson_oracle(1.0, {40, 1e-30}), dv::Error);
  EXPECT_THROW((void)ref::dawson_oracle(1.0, {50, 1e-31}), dv::Error);
  try {
    (void)ref::w_oracle(1.0, -0.5);
    FAIL();
  } catch (const dv::Error& e) {
    EXPECT_EQ(e.code(), dv::ErrorCode::negative_y);
  }
  try {
    (void)ref::w_oracle(150.0, 150.0);
    FAIL();
  } catch (const dv::Error& e) {
    EXPECT_EQ(e.code(), dv::ErrorCode::domain);
  }
}

// On the real axis w(x) = exp(-x^2) + (2i/sqrt(pi)) F(x).
TEST(FaddeevaOracle, RealAxisReducesToGaussianAndDawson) {
  const mp::Real two_over_sqrt_pi = mp::Real(2L, kBits) / mp::sqrt(mp::pi(kBits));
  for (int i = 0; i < 100; ++i) {
    const double x = 15.0 * i / 99.0;
    const auto w = ref::w_oracle(x, 0.0);
    const mp::Real gauss = mp::exp(-(mp::Real(x, kBits) * mp::Real(x, kBits)));
    EXPECT_TRUE(rel_within(w.re, gauss, 1e-25)) << "x=" << x;
    if (x == 0.0) {
      EXPECT_TRUE(w.im.is_zero() || mp::abs(w.im) < mp::Real(1e-40, kBits));
    } else {
      EXPECT_TRUE(rel_within(w.im, two_over_sqrt_pi * ref::dawson_oracle(x), 1e-25)) << "x=" << x;
    }
  }
}

// On the imaginary axis K(0, y) = exp(y^2) erfc(y).
TEST(FaddeevaOracle, ImaginaryAxisMatchesErfc) {
  for (double y : {1e-7, 1e-3, 1.0}) {
    const mp::Real yy(y, kBits);
    const mp::Real expected = mp::exp(yy * yy) * mp::erfc(yy);
    EXPECT_TRUE(rel_within(ref::w_oracle(0.0, y).re, expected, 1e-25)) << "y=" << y;
    EXPECT_TRUE(rel_within(ref::w_series_oracle(0.0, y).re, expected, 1e-25)) << "y=" << y;
  }
}

TEST(FaddeevaOracle, Origin) {
  for (const auto& w : {ref::w_oracle(0.0, 0.0), ref::w_series_oracle(0.0, 0.0)}) {
    EXPECT_TRUE(rel_within(w.re, mp::Real(1L, kBits), 1e-30));
    EXPECT_TRUE(w.im.is_zero());
  }
}

TEST(FaddeevaOracle, SeriesAndQuadratureAgree) {
  for (auto [x, y] : {std::pair{1.0, 1e-7}, {0.3, 0.2}, {7.5, 5e-7}, {15.0, 1e-6}, {3.0, 4.0}, {-12.0, 8.0}}) {
    const auto q = ref::w_oracle(x, y);
    const auto s = ref::w_series_oracle(x, y, {300, 1e-30});
    EXPECT_TRUE(rel_within(q.re, s.re, 1e-25)) << x << "," << y;
    EXPECT_TRUE(rel_within(q.im, s.im, 1e-25)) << x << "," << y;
  }
}

TEST(FaddeevaOracle, LargeArgumentAsymptote) {
  // w(z) ~ i / (sqrt(pi) z) (1 + 1/(2 z^2) + 3/(4 z^4)) for large |z|.
  const double x = 150.0;
  const double y = 100.0;
  const auto w = ref::w_oracle(x, y);
  const std::complex<double> z(x, y);
  const std::complex<double> z2 = z * z;
  const std::complex<double> approx =
      std::complex<double>(0, 1) / (std::sqrt(3.141592653589793) * z) * (1.0 + 1.0 / (2.0 * z2) + 3.0 / (4.0 * z2 * z2));
  EXPECT_NEAR(w.re.to_double(), approx.real(), 1e-12 * std::abs(approx));
  EXPECT_NEAR(w.im.to_double(), approx.imag(), 1e-12 * std::abs(approx));
}

TEST(OracleCache, RoundTripAndLookup) {
  const dv::GridSpec grid{2.0, 1e-6, 3, 2};
  ref::GenerationOptions opt;
  opt.threads = 2;
  opt.verify_every = 2;
  const auto cache = ref::generate_oracle_cache(grid, opt);
  ASSERT_EQ(cache.size(), 6u);
  EXPECT_EQ(cache.meta("format"), std::string(ref::kCacheFormat));
  EXPECT_EQ(cache.meta("verified_points"), "3");

  std::ostringstream out;
  cache.write(out);
  std::istringstream in(out.str());
  const auto loaded = ref::OracleCache::read(in);
  ASSERT_EQ(loaded.size(), cache.size());
  for (double y : grid.ys()) {
    for (double x : grid.xs()) {
      const auto v = loaded.lookup(x, y);
      ASSERT_TRUE(v.has_value()) << x << "," << y;
      const auto direct = ref::w_series_oracle(x, y);
      EXPECT_EQ(v->k, direct.re.to_double());
      EXPECT_EQ(v->l, direct.im.to_double());
    }
  }
  EXPECT_FALSE(loaded.lookup(0.5, 0.0).has_value());

  // Same grid, same bytes.
  std::ostringstream again;
  ref::generate_oracle_cache(grid, opt).write(again);
  EXPECT_EQ(again.str(), out.str());
}

TEST(OracleCache, Errors) {
  try {
    (void)ref::OracleCache::load("/nonexistent/cache.csv");
    FAIL();
  } catch (const dv::Error& e) {
    EXPECT_EQ(e.code(), dv::ErrorCode::missing_reference);
  }
  std::istringstream bad("# format=dv-oracle-cache-v1\n1,2,3\n");
  EXPECT_THROW((void)ref::OracleCache::read(bad), dv::Error);
}

}  // namespace
