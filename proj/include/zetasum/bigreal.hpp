#pragma once

#include <mpfr.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

namespace zetasum {

/// Decimal working precision shared by every value in one computation.
class Precision {
 public:
  explicit Precision(unsigned digits = 40) : digits_(digits) {
    if (digits < 20) throw std::invalid_argument("Precision: digits must be >= 20");
  }

  unsigned digits() const { return digits_; }

  /// Binary precision handed to the arithmetic backend. A few guard bits
  /// on top of digits*log2(10) keep decimal round-trips exact.
  mpfr_prec_t bits() const {
    return static_cast<mpfr_prec_t>(std::ceil(digits_ * 3.3219280948873623)) + 8;
  }

  friend bool operator==(Precision a, Precision b) { return a.digits_ == b.digits_; }
  friend bool operator!=(Precision a, Precision b) { return a.digits_ != b.digits_; }

 private:
  unsigned digits_;
};

/// Arbitrary-precision real number. Each value carries its Precision;
/// binary operations round once, to the wider of the two operand
/// precisions. Results are always finite: any overflow to infinity or
/// NaN throws instead of propagating.
class BigReal {
 public:
  BigReal(long value, Precision prec) : prec_(prec) {
    mpfr_init2(v_, prec.bits());
    mpfr_set_si(v_, value, MPFR_RNDN);
  }

  BigReal(const std::string& decimal, Precision prec) : prec_(prec) {
    mpfr_init2(v_, prec.bits());
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("BigReal: unparsable decimal string '" + decimal + "'");
    check_finite();
  }

  static BigReal zero(Precision prec) { return BigReal(0L, prec); }
  static BigReal one(Precision prec) { return BigReal(1L, prec); }

  BigReal(const BigReal& other) : prec_(other.prec_) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& other) noexcept : prec_(other.prec_) {
    v_[0] = other.v_[0];
    other.owns_ = false;
  }

  BigReal& operator=(const BigReal& other) {
    if (this != &other) {
      BigReal tmp(other);
      swap(tmp);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& other) noexcept {
    if (this != &other) {
      if (owns_) mpfr_clear(v_);
      v_[0] = other.v_[0];
      prec_ = other.prec_;
      owns_ = other.owns_;
      other.owns_ = false;
    }
    return *this;
  }

  ~BigReal() {
    if (owns_) mpfr_clear(v_);
  }

  void swap(BigReal& other) noexcept {
    std::swap(v_[0], other.v_[0]);
    std::swap(prec_, other.prec_);
    std::swap(owns_, other.owns_);
  }

  Precision precision() const { return prec_; }
  unsigned digits() const { return prec_.digits(); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Same numeric value re-rounded to (or exactly extended to) `prec`.
  BigReal to_precision(Precision prec) const {
    BigReal r(0L, prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    r.check_finite();
    return r;
  }

  /// Exact scaling by 2^e.
  BigReal mul_pow2(long e) const {
    BigReal r(*this);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    r.check_finite();
    return r;
  }

  BigReal operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(0L, wider(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.check_finite();
    return r;
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(0L, wider(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.check_finite();
    return r;
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(0L, wider(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.check_finite();
    return r;
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    if (b.is_zero()) throw std::domain_error("BigReal: division by zero");
    BigReal r(0L, wider(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.check_finite();
    return r;
  }

  friend BigReal operator+(const BigReal& a, long b) {
    BigReal r(0L, a.prec_);
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    r.check_finite();
    return r;
  }
  friend BigReal operator-(const BigReal& a, long b) {
    BigReal r(0L, a.prec_);
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    r.check_finite();
    return r;
  }
  friend BigReal operator*(const BigReal& a, long b) {
    BigReal r(0L, a.prec_);
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    r.check_finite();
    return r;
  }
  friend BigReal operator/(const BigReal& a, long b) {
    if (b == 0) throw std::domain_error("BigReal: division by zero");
    BigReal r(0L, a.prec_);
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    r.check_finite();
    return r;
  }
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal r(0L, b.prec_);
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    r.check_finite();
    return r;
  }
  friend BigReal operator/(long a, const BigReal& b) {
    if (b.is_zero()) throw std::domain_error("BigReal: division by zero");
    BigReal r(0L, b.prec_);
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    r.check_finite();
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

  /// Scientific-notation decimal string with `ndigits` significant digits.
  std::string to_string(unsigned ndigits) const {
    if (ndigits == 0) ndigits = prec_.digits();
    char fmt[32];
    std::snprintf(fmt, sizeof(fmt), "%%.%uRe", ndigits - 1);
    char* out = nullptr;
    if (mpfr_asprintf(&out, fmt, v_) < 0) throw std::runtime_error("BigReal: formatting failed");
    std::string s(out);
    mpfr_free_str(out);
    return s;
  }
  std::string to_string() const { return to_string(prec_.digits()); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Rough base-10 exponent (for parameter heuristics only).
  long exponent10_estimate() const {
    if (is_zero()) return -static_cast<long>(prec_.digits());
    return static_cast<long>(std::floor(static_cast<double>(mpfr_get_exp(v_)) * 0.30102999566398));
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw_mutable() { return v_; }

  /// Enforces the no-NaN/no-infinity contract after backend writes.
  void check_finite() const {
    if (!mpfr_number_p(v_))
      throw std::overflow_error("BigReal: operation produced a non-finite value");
  }

 private:
  static Precision wider(const BigReal& a, const BigReal& b) {
    return a.prec_.digits() >= b.prec_.digits() ? a.prec_ : b.prec_;
  }

  mpfr_t v_;
  Precision prec_;
  bool owns_ = true;
};

inline void swap(BigReal& a, BigReal& b) noexcept { a.swap(b); }

inline BigReal abs(const BigReal& x) {
  BigReal r(x);
  mpfr_abs(r.raw_mutable(), x.raw(), MPFR_RNDN);
  return r;
}

inline BigReal ln(const BigReal& x) {
  if (x.sign() <= 0) throw std::domain_error("ln: argument must be positive");
  BigReal r(0L, x.precision());
  mpfr_log(r.raw_mutable(), x.raw(), MPFR_RNDN);
  r.check_finite();
  return r;
}

inline BigReal exp(const BigReal& x) {
  BigReal r(0L, x.precision());
  mpfr_exp(r.raw_mutable(), x.raw(), MPFR_RNDN);
  r.check_finite();
  return r;
}

inline BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw std::domain_error("sqrt: argument must be nonnegative");
  BigReal r(0L, x.precision());
  mpfr_sqrt(r.raw_mutable(), x.raw(), MPFR_RNDN);
  r.check_finite();
  return r;
}

inline BigReal pow(const BigReal& x, const BigReal& y) {
  if (x.sign() <= 0) throw std::domain_error("pow: base must be positive");
  BigReal r(0L, x.precision().digits() >= y.precision().digits() ? x.precision() : y.precision());
  mpfr_pow(r.raw_mutable(), x.raw(), y.raw(), MPFR_RNDN);
  r.check_finite();
  return r;
}

inline BigReal pow(const BigReal& x, long n) {
  BigReal r(0L, x.precision());
  mpfr_pow_si(r.raw_mutable(), x.raw(), n, MPFR_RNDN);
  r.check_finite();
  return r;
}

/// n^e for integer n >= 1 at the given precision.
inline BigReal ui_pow(unsigned long n, unsigned long e, Precision prec) {
  BigReal r(0L, prec);
  mpfr_ui_pow_ui(r.raw_mutable(), n, e, MPFR_RNDN);
  r.check_finite();
  return r;
}

inline BigReal pow10(long k, Precision prec) {
  BigReal r(0L, prec);
  mpfr_ui_pow_ui(r.raw_mutable(), 10, static_cast<unsigned long>(k >= 0 ? k : -k), MPFR_RNDN);
  if (k < 0) mpfr_si_div(r.raw_mutable(), 1, r.raw(), MPFR_RNDN);
  r.check_finite();
  return r;
}

inline BigReal pi(Precision prec) {
  BigReal r(0L, prec);
  mpfr_const_pi(r.raw_mutable(), MPFR_RNDN);
  return r;
}

/// n! as a correctly rounded value.
inline BigReal factorial(unsigned long n, Precision prec) {
  BigReal r(0L, prec);
  mpfr_fac_ui(r.raw_mutable(), n, MPFR_RNDN);
  r.check_finite();
  return r;
}

}  // namespace zetasum
