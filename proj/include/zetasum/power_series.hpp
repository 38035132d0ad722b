#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "zetasum/bigreal.hpp"

namespace zetasum {

/// Truncated formal power series sum_{k=0}^{K} a_k t^k. The truncation
/// order is fixed at construction; operations never silently extend it,
/// and binary operations truncate to the shorter operand.
class PowerSeries {
 public:
  explicit PowerSeries(std::vector<BigReal> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("PowerSeries: needs at least the constant term");
    for (const auto& x : c_) x.check_finite();
  }

  static PowerSeries zero(unsigned order, Precision prec) {
    return PowerSeries(std::vector<BigReal>(order + 1, BigReal::zero(prec)));
  }

  static PowerSeries constant(const BigReal& value, unsigned order) {
    std::vector<BigReal> c(order + 1, BigReal::zero(value.precision()));
    c[0] = value;
    return PowerSeries(std::move(c));
  }

  unsigned order() const { return static_cast<unsigned>(c_.size()) - 1; }

  const BigReal& coeff(unsigned i) const {
    if (i >= c_.size()) throw std::out_of_range("PowerSeries: coefficient index past order");
    return c_[i];
  }

  void set_coeff(unsigned i, BigReal v) {
    if (i >= c_.size()) throw std::out_of_range("PowerSeries: coefficient index past order");
    c_[i] = std::move(v);
  }

  Precision precision() const { return c_[0].precision(); }

  const std::vector<BigReal>& coeffs() const { return c_; }

  /// Truncated copy at order `k` (k <= order).
  PowerSeries truncated(unsigned k) const {
    if (k >= c_.size()) throw std::invalid_argument("PowerSeries: cannot truncate upward");
    return PowerSeries(std::vector<BigReal>(c_.begin(), c_.begin() + k + 1));
  }

 private:
  std::vector<BigReal> c_;
};

inline PowerSeries add(const PowerSeries& a, const PowerSeries& b) {
  const unsigned k = std::min(a.order(), b.order());
  std::vector<BigReal> c;
  c.reserve(k + 1);
  for (unsigned i = 0; i <= k; ++i) c.push_back(a.coeff(i) + b.coeff(i));
  return PowerSeries(std::move(c));
}

inline PowerSeries sub(const PowerSeries& a, const PowerSeries& b) {
  const unsigned k = std::min(a.order(), b.order());
  std::vector<BigReal> c;
  c.reserve(k + 1);
  for (unsigned i = 0; i <= k; ++i) c.push_back(a.coeff(i) - b.coeff(i));
  return PowerSeries(std::move(c));
}

inline PowerSeries scale(const PowerSeries& a, const BigReal& s) {
  std::vector<BigReal> c;
  c.reserve(a.order() + 1);
  for (unsigned i = 0; i <= a.order(); ++i) c.push_back(a.coeff(i) * s);
  return PowerSeries(std::move(c));
}

/// Cauchy product truncated at min(order_a, order_b).
inline PowerSeries mul(const PowerSeries& a, const PowerSeries& b) {
  const unsigned k = std::min(a.order(), b.order());
  const Precision prec = a.precision();
  std::vector<BigReal> c(k + 1, BigReal::zero(prec));
  for (unsigned i = 0; i <= k; ++i) {
    BigReal acc = BigReal::zero(prec);
    for (unsigned m = 0; m <= i; ++m) acc = acc + a.coeff(m) * b.coeff(i - m);
    c[i] = std::move(acc);
  }
  return PowerSeries(std::move(c));
}

/// Quotient q with mul(q, b) = a up to the truncation order. Requires a
/// unit constant term in the divisor.
inline PowerSeries div(const PowerSeries& a, const PowerSeries& b) {
  if (b.coeff(0).is_zero())
    throw std::domain_error("PowerSeries div: divisor has zero constant term");
  const unsigned k = std::min(a.order(), b.order());
  std::vector<BigReal> q;
  q.reserve(k + 1);
  for (unsigned n = 0; n <= k; ++n) {
    BigReal s = a.coeff(n);
    for (unsigned i = 0; i < n; ++i) s = s - q[i] * b.coeff(n - i);
    q.push_back(s / b.coeff(0));
  }
  return PowerSeries(std::move(q));
}

/// exp(a) for a series with zero constant term, via the derivative
/// recurrence n e_n = sum_{j=1..n} j a_j e_{n-j}.
inline PowerSeries exp_series(const PowerSeries& a) {
  if (!a.coeff(0).is_zero())
    throw std::domain_error("PowerSeries exp: constant term must be zero");
  const unsigned k = a.order();
  const Precision prec = a.precision();
  std::vector<BigReal> e;
  e.reserve(k + 1);
  e.push_back(BigReal::one(prec));
  for (unsigned n = 1; n <= k; ++n) {
    BigReal s = BigReal::zero(prec);
    for (unsigned j = 1; j <= n; ++j) s = s + a.coeff(j) * static_cast<long>(j) * e[n - j];
    e.push_back(s / static_cast<long>(n));
  }
  return PowerSeries(std::move(e));
}

/// Termwise d/dt; order drops by one (the derivative of an order-0 series
/// is the order-0 zero series).
inline PowerSeries derivative(const PowerSeries& a) {
  if (a.order() == 0) return PowerSeries::zero(0, a.precision());
  std::vector<BigReal> c;
  c.reserve(a.order());
  for (unsigned i = 1; i <= a.order(); ++i) c.push_back(a.coeff(i) * static_cast<long>(i));
  return PowerSeries(std::move(c));
}

/// Termwise integral with constant term 0; order grows by one.
inline PowerSeries antiderivative(const PowerSeries& a) {
  std::vector<BigReal> c;
  c.reserve(a.order() + 2);
  c.push_back(BigReal::zero(a.precision()));
  for (unsigned i = 0; i <= a.order(); ++i) c.push_back(a.coeff(i) / static_cast<long>(i + 1));
  return PowerSeries(std::move(c));
}

/// a * (c + t), truncated at a's order.
inline PowerSeries mul_linear(const PowerSeries& a, const BigReal& c) {
  std::vector<BigReal> out;
  out.reserve(a.order() + 1);
  out.push_back(a.coeff(0) * c);
  for (unsigned i = 1; i <= a.order(); ++i) out.push_back(a.coeff(i) * c + a.coeff(i - 1));
  return PowerSeries(std::move(out));
}

/// Laurent series with at most a simple pole: pole/t + regular(t).
/// This is the only shape the zeta-type expansions around s = 1 need;
/// higher-order pole data is rejected at construction.
class LaurentSeries {
 public:
  LaurentSeries(BigReal pole_coeff, PowerSeries regular)
      : pole_(std::move(pole_coeff)), regular_(std::move(regular)) {}

  LaurentSeries(const std::vector<BigReal>& pole_coeffs, PowerSeries regular)
      : pole_(pole_coeffs.empty() ? BigReal::zero(regular.precision()) : pole_coeffs.back()),
        regular_(std::move(regular)) {
    if (pole_coeffs.size() > 1)
      throw std::invalid_argument("LaurentSeries: poles of order > 1 are not supported");
  }

  unsigned pole_order() const { return pole_.is_zero() ? 0u : 1u; }
  const BigReal& residue() const { return pole_; }
  const PowerSeries& regular() const { return regular_; }

  /// Termwise derivative. A simple pole c/t differentiates to -c/t^2, so
  /// the pole slot of the result holds the coefficient of t^{-2}; the
  /// result is meaningful only as the numerator of
  /// laurent_logderiv_regular.
  LaurentSeries derivative_series() const {
    return LaurentSeries(-pole_, zetasum::derivative(regular_));
  }

 private:
  BigReal pole_;
  PowerSeries regular_;
};

/// Regular part R of the logarithmic-derivative quotient: for
/// f = rho/t + P(t) with rho != 0 and numer = f' (as produced by
/// derivative_series), f'/f = -1/t + R(t) where
/// R = (P + t P') / (rho + t P), a plain series division once the pole
/// is cleared by multiplying numerator and denominator by t^2 and t.
inline PowerSeries laurent_logderiv_regular(const LaurentSeries& numer,
                                            const LaurentSeries& denom) {
  if (denom.residue().is_zero())
    throw std::domain_error("laurent_logderiv_regular: denominator residue is zero");
  const BigReal mismatch = numer.residue() + denom.residue();
  const BigReal tol = pow10(-static_cast<long>(denom.residue().digits()) + 6,
                            denom.residue().precision());
  if (abs(mismatch) > tol * (abs(denom.residue()) + 1))
    throw std::invalid_argument(
        "laurent_logderiv_regular: numerator is not the derivative of the denominator");

  const PowerSeries& p = denom.regular();
  const Precision prec = p.precision();
  const unsigned k = p.order();

  // N = P + t P', D = rho + t P, both truncated at order k.
  std::vector<BigReal> num, den;
  num.reserve(k + 1);
  den.reserve(k + 1);
  num.push_back(p.coeff(0));
  den.push_back(denom.residue());
  for (unsigned i = 1; i <= k; ++i) {
    const BigReal dcoeff =
        (i - 1 <= numer.regular().order()) ? numer.regular().coeff(i - 1) : BigReal::zero(prec);
    num.push_back(p.coeff(i) + dcoeff);
    den.push_back(p.coeff(i - 1));
  }
  return div(PowerSeries(std::move(num)), PowerSeries(std::move(den)));
}

}  // namespace zetasum
