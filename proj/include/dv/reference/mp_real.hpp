#pragma once

// Minimal value-semantic wrapper over MPFR. Every object carries its own
// precision; binary operations produce the larger of the operand precisions.
// No global default precision is touched, so independent threads may use
// different precisions concurrently.

#include <mpfr.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dv::mp {

using Precision = mpfr_prec_t;

/// Bits needed for `digits` significant decimal digits.
inline Precision bits_for_digits(long digits) {
  return static_cast<Precision>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 8;
}

class Real {
 public:
  explicit Real(Precision bits = 64) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  Real(double value, Precision bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  Real(long value, Precision bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, value, MPFR_RNDN);
  }
  Real(int value, Precision bits) : Real(static_cast<long>(value), bits) {}
  Real(std::string_view text, Precision bits) {
    mpfr_init2(v_, bits);
    const std::string s(text);
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw std::invalid_argument("mp::Real: cannot parse '" + s + "'");
    }
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  Precision precision() const { return mpfr_get_prec(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Scientific notation with `digits` significant digits, e.g. "1.2345e-05".
  std::string str(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  Real& operator+=(const Real& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    widen(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long k) {
    mpfr_mul_si(v_, v_, k, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(long k) {
    mpfr_div_si(v_, v_, k, MPFR_RNDN);
    return *this;
  }

  friend Real operator-(Real a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator*(Real a, long k) { return a *= k; }
  friend Real operator/(Real a, long k) { return a /= k; }

  friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }

 private:
  void widen(const Real& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

namespace detail {
template <int (*Fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
Real unary(const Real& a) {
  Real out(a.precision());
  Fn(out.raw(), a.raw(), MPFR_RNDN);
  return out;
}
}  // namespace detail

inline Real exp(const Real& a) { return detail::unary<mpfr_exp>(a); }
inline Real sin(const Real& a) { return detail::unary<mpfr_sin>(a); }
inline Real cos(const Real& a) { return detail::unary<mpfr_cos>(a); }
inline Real sqrt(const Real& a) { return detail::unary<mpfr_sqrt>(a); }
inline Real abs(const Real& a) { return detail::unary<mpfr_abs>(a); }
inline Real erfc(const Real& a) { return detail::unary<mpfr_erfc>(a); }
inline Real log10(const Real& a) { return detail::unary<mpfr_log10>(a); }

inline std::pair<Real, Real> sin_cos(const Real& a) {
  Real s(a.precision());
  Real c(a.precision());
  mpfr_sin_cos(s.raw(), c.raw(), a.raw(), MPFR_RNDN);
  return {std::move(s), std::move(c)};
}

inline Real pi(Precision bits) {
  Real out(bits);
  mpfr_const_pi(out.raw(), MPFR_RNDN);
  return out;
}

/// |a - b| / |b|; returns |a| when b is zero.
inline Real relative_difference(const Real& a, const Real& b) {
  Real d = abs(a - b);
  if (b.is_zero()) return d;
  return d / abs(b);
}

/// Complex number over Real with explicit component arithmetic.
struct Complex {
  Real re;
  Real im;

  explicit Complex(Precision bits) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& k) {
    re *= k;
    im *= k;
    return *this;
  }
  Complex& operator/=(long k) {
    re /= k;
    im /= k;
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator*(Complex a, const Real& k) { return a *= k; }
};

/// exp(a.re) (cos(a.im) + i sin(a.im)).
inline Complex exp(const Complex& a) {
  const Real mag = exp(a.re);
  auto [s, c] = sin_cos(a.im);
  return {mag * c, mag * s};
}

}  // namespace dv::mp
