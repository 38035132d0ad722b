#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zetasum/bernoulli.hpp"
#include "zetasum/bigreal.hpp"
#include "zetasum/power_series.hpp"

namespace zetasum {

/// Explicit Euler-Maclaurin parameters: number of directly summed terms N
/// and number of Bernoulli correction terms M. Normally chosen internally;
/// exposed so self-validation can rerun with doubled parameters.
struct EmParams {
  unsigned long partial_terms;
  unsigned correction_terms;
};

/// Taylor data of s |-> zeta(s, a) at s0 > 1: series coefficient m equals
/// zeta^(m)(s0, a) / m!.
struct HurwitzTaylor {
  BigReal s0;
  BigReal a;
  PowerSeries series;
};

/// Taylor data of Gamma at x0 > 0: series coefficient m equals
/// Gamma^(m)(x0) / m!.
struct GammaTaylor {
  BigReal x0;
  PowerSeries series;
};

namespace detail {

/// exp(-L t) truncated at `order`: coefficient i is (-L)^i / i!.
inline PowerSeries exp_neg_t(const BigReal& lnu, unsigned order) {
  std::vector<BigReal> c;
  c.reserve(order + 1);
  c.push_back(BigReal::one(lnu.precision()));
  BigReal p = BigReal::one(lnu.precision());
  for (unsigned i = 1; i <= order; ++i) {
    p = p * (-lnu) / static_cast<long>(i);
    c.push_back(p);
  }
  return PowerSeries(std::move(c));
}

inline long neg_exponent10(const BigReal& x) {
  // digits of smallness of x, >= 0; used only for precision budgeting
  const long e = x.exponent10_estimate();
  return e < 0 ? -e : 0;
}

struct EmSeriesResult {
  PowerSeries series;
  bool converged;
};

/// One Euler-Maclaurin pass for the t-family zeta(s0 + t, a), all pieces
/// series-valued in t:
///   sum_{n<N} (n+a)^{-s0} e^{-t ln(n+a)}
///   + (N+a)^{1-s0-t} / (s0 - 1 + t)
///   + (N+a)^{-s0-t} / 2
///   + sum_{m=1..M} B_{2m}/(2m)! (s0+t)_{2m-1} (N+a)^{-s0-t-2m+1}.
/// `eps_stop` is the relative per-coefficient size under which the
/// correction terms must fall for convergence.
inline EmSeriesResult hurwitz_em_pass(const BigReal& s0, const BigReal& a, unsigned order,
                                      unsigned long big_n, unsigned big_m,
                                      const BigReal& eps_stop, bool fixed_m) {
  const Precision pw = s0.precision();
  const BigReal one = BigReal::one(pw);

  PowerSeries acc = PowerSeries::zero(order, pw);
  {
    std::vector<BigReal> c(order + 1, BigReal::zero(pw));
    for (unsigned long n = 0; n < big_n; ++n) {
      const BigReal u = a + static_cast<long>(n);
      const BigReal lnu = ln(u);
      BigReal term = pow(u, -s0);
      c[0] = c[0] + term;
      for (unsigned i = 1; i <= order; ++i) {
        term = term * (-lnu) / static_cast<long>(i);
        c[i] = c[i] + term;
      }
    }
    acc = PowerSeries(std::move(c));
  }

  const BigReal u = a + static_cast<long>(big_n);
  const BigReal lnu = ln(u);
  const PowerSeries ee = exp_neg_t(lnu, order);

  // integral tail: u^{1-s0} e^{-t ln u} / (s0 - 1 + t)
  {
    std::vector<BigReal> den(order + 1, BigReal::zero(pw));
    den[0] = s0 - 1L;
    if (order >= 1) den[1] = one;
    acc = add(acc, scale(div(ee, PowerSeries(std::move(den))), pow(u, one - s0)));
  }

  const BigReal base_n = pow(u, -s0);
  acc = add(acc, scale(ee, base_n.mul_pow2(-1)));

  // Bernoulli corrections; poch carries (s0 + t)(s0 + 1 + t)...(s0 + 2m - 2 + t)
  PowerSeries poch = PowerSeries::constant(one, order);
  poch = mul_linear(poch, s0);
  BigReal upow = base_n / u;
  const BigReal u2 = u * u;
  bool converged = false;
  unsigned small_in_a_row = 0;
  BigReal prev_mx = BigReal::zero(pw);
  for (unsigned m = 1; m <= big_m; ++m) {
    if (m > 1) {
      poch = mul_linear(poch, s0 + static_cast<long>(2 * m - 3));
      poch = mul_linear(poch, s0 + static_cast<long>(2 * m - 2));
      upow = upow / u2;
    }
    const BigReal coeff =
        bernoulli_number(2 * m, pw) / factorial(2 * m, pw) * upow;
    const PowerSeries term = scale(mul(poch, ee), coeff);
    acc = add(acc, term);

    BigReal mx = BigReal::zero(pw);
    for (unsigned i = 0; i <= order; ++i) {
      const BigReal rel = abs(term.coeff(i)) / (abs(acc.coeff(i)) + 1L);
      if (rel > mx) mx = rel;
    }
    if (!fixed_m) {
      if (mx < eps_stop) {
        if (++small_in_a_row >= 2) {
          converged = true;
          break;
        }
      } else {
        small_in_a_row = 0;
        // asymptotic series turning divergent before reaching target
        if (m > 4 && mx > prev_mx * 4L) break;
      }
      prev_mx = mx;
    } else if (m == big_m) {
      converged = mx < eps_stop;
    }
  }
  if (fixed_m) converged = true;  // caller owns error control
  return {std::move(acc), converged};
}

}  // namespace detail

/// Taylor coefficients of s |-> zeta(s, a) at s0 up to `order`, by a single
/// series-valued Euler-Maclaurin pass (all ln(n+a) powers shared across the
/// derivative orders). Adaptive in (N, M) unless `params` pins them.
inline HurwitzTaylor hurwitz_taylor(const BigReal& s0_in, const BigReal& a_in, unsigned order,
                                    Precision digits, std::optional<EmParams> params = {}) {
  if (!(s0_in > 1L)) throw std::domain_error("hurwitz_taylor: requires s0 > 1");
  if (!(a_in > 0L)) throw std::domain_error("hurwitz_taylor: requires a > 0");

  // absolute-error budget: coefficients scale like (s0-1)^{-(m+1)}
  const long pad = (order + 1) * detail::neg_exponent10(s0_in - 1L) + 2 * detail::neg_exponent10(a_in);
  const Precision pw(static_cast<unsigned>(digits.digits() + 12 + pad));
  const BigReal s0 = s0_in.to_precision(pw);
  const BigReal a = a_in.to_precision(pw);
  const BigReal eps_stop = pow10(-static_cast<long>(pw.digits()) + 5, pw);

  unsigned long big_n;
  unsigned big_m;
  bool fixed = params.has_value();
  if (fixed) {
    big_n = params->partial_terms;
    big_m = params->correction_terms;
  } else {
    big_n = static_cast<unsigned long>(0.8 * pw.digits()) + 12;
    big_m = std::min<unsigned>(static_cast<unsigned>(pw.digits()), (max_bernoulli_index - 2) / 2);
  }

  for (int attempt = 0;; ++attempt) {
    auto r = detail::hurwitz_em_pass(s0, a, order, big_n, big_m, eps_stop, fixed);
    if (r.converged || fixed) {
      std::vector<BigReal> out;
      out.reserve(order + 1);
      for (unsigned i = 0; i <= order; ++i) out.push_back(r.series.coeff(i).to_precision(digits));
      return {s0_in.to_precision(digits), a_in.to_precision(digits), PowerSeries(std::move(out))};
    }
    if (attempt >= 3)
      throw std::runtime_error("hurwitz_taylor: Euler-Maclaurin did not reach target accuracy");
    big_n *= 2;
  }
}

/// Li_m(z) for integer m >= 1 on the closed unit interval of real z.
/// z = -1 routes through the alternating-zeta relation
/// (2^{1-m} - 1) zeta(m); m = 1 through -ln(1 - z); z = 1 (m >= 2)
/// through the zeta evaluator; otherwise the defining series with its
/// geometric tail bound.
inline BigReal polylog_int(unsigned m, const BigReal& z, Precision digits) {
  if (m < 1) throw std::domain_error("polylog_int: requires m >= 1");
  const BigReal az = abs(z);
  if (az > 1L) throw std::domain_error("polylog_int: requires |z| <= 1");
  const Precision pw(digits.digits() + 8);

  if (z == 1L) {
    if (m == 1) throw std::domain_error("polylog_int: Li_1(1) diverges");
    const BigReal s0(static_cast<long>(m), pw);
    return hurwitz_taylor(s0, BigReal::one(pw), 0, digits).series.coeff(0);
  }
  if (z == -1L) {
    if (m == 1) return (-ln(BigReal(2L, pw))).to_precision(digits);
    const BigReal zeta_m =
        hurwitz_taylor(BigReal(static_cast<long>(m), pw), BigReal::one(pw), 0, Precision(pw.digits()))
            .series.coeff(0);
    const BigReal factor = BigReal::one(pw).mul_pow2(1 - static_cast<long>(m)) - 1L;
    return (factor * zeta_m).to_precision(digits);
  }
  if (m == 1) return (-ln(1L - z.to_precision(pw))).to_precision(digits);
  if (z.is_zero()) return BigReal::zero(digits);

  const BigReal zp_in = z.to_precision(pw);
  const BigReal eps = pow10(-static_cast<long>(pw.digits()) + 2, pw);
  const double lg = -std::log10(std::min(0.999999, abs(z).to_double()));
  unsigned long k_guess = static_cast<unsigned long>((pw.digits() + 4) / std::max(lg, 1e-9)) + 4;
  if (k_guess > 2000000)
    throw std::domain_error(
        "polylog_int: |z| too close to 1 for the direct series at this precision");

  BigReal acc = BigReal::zero(pw);
  BigReal zp = BigReal::one(pw);
  unsigned long k = 0;
  for (;;) {
    for (; k < k_guess; ) {
      ++k;
      zp = zp * zp_in;
      acc = acc + zp / ui_pow(k, m, pw);
    }
    // tail bound |z|^{k+1} / ((k+1)^m (1-|z|))
    const BigReal azp = abs(zp) * abs(zp_in);
    const BigReal bound = azp / (ui_pow(k + 1, m, pw) * (1L - abs(zp_in)));
    if (bound < eps) break;
    k_guess += k_guess / 2 + 8;
  }
  return acc.to_precision(digits);
}

/// The alternating-zeta combination (2^{-eps} - 1) zeta(1 + eps), which
/// tends to -ln 2 as eps -> 0+ with first-order error.
inline BigReal alt_zeta_limit_probe(const BigReal& eps, Precision digits) {
  if (!(eps > 0L) || eps > 1L)
    throw std::domain_error("alt_zeta_limit_probe: requires 0 < eps <= 1");
  const long pad = detail::neg_exponent10(eps);
  const Precision pw(digits.digits() + 10 + static_cast<unsigned>(pad));
  const BigReal e = eps.to_precision(pw);
  const BigReal zeta_val =
      hurwitz_taylor(1L + e, BigReal::one(pw), 0, Precision(pw.digits())).series.coeff(0);
  const BigReal factor = pow(BigReal(2L, pw), -e) - 1L;
  return (factor * zeta_val).to_precision(digits);
}

namespace detail {

/// Asymptotic digamma at large y: ln y - 1/(2y) - sum B_{2m}/(2m y^{2m}).
inline BigReal digamma_asymptotic(const BigReal& y, const BigReal& eps) {
  const Precision pw = y.precision();
  BigReal acc = ln(y) - (1L / y).mul_pow2(-1);
  const BigReal y2 = y * y;
  BigReal ypow = y2;
  for (unsigned m = 1; 2 * m <= max_bernoulli_index; ++m) {
    const BigReal term = bernoulli_number(2 * m, pw) / (static_cast<long>(2 * m) * ypow);
    acc = acc - term;
    if (abs(term) < eps) return acc;
    ypow = ypow * y2;
  }
  throw std::runtime_error("digamma: asymptotic series exhausted before target accuracy");
}

inline unsigned long shift_threshold(Precision pw) { return 10 + pw.digits() / 2; }

}  // namespace detail

/// psi(x) for x > 0, by recurrence shift past the asymptotic-series
/// threshold.
inline BigReal digamma(const BigReal& x, Precision digits) {
  if (!(x > 0L)) throw std::domain_error("digamma: requires x > 0");
  const Precision pw(digits.digits() + 10 + static_cast<unsigned>(detail::neg_exponent10(x)));
  const BigReal eps = pow10(-static_cast<long>(pw.digits()) + 2, pw);
  const BigReal xi = x.to_precision(pw);
  const unsigned long threshold = detail::shift_threshold(pw);

  unsigned long shift = 0;
  if (xi < static_cast<long>(threshold)) {
    const double xd = std::max(xi.to_double(), 0.0);
    shift = threshold - static_cast<unsigned long>(std::floor(std::min(xd, double(threshold))));
  }
  BigReal corr = BigReal::zero(pw);
  for (unsigned long i = 0; i < shift; ++i) corr = corr + 1L / (xi + static_cast<long>(i));
  const BigReal y = xi + static_cast<long>(shift);
  return (detail::digamma_asymptotic(y, eps) - corr).to_precision(digits);
}

/// psi^(j)(x) for j >= 1, x > 0; DLMF asymptotic series after the same
/// recurrence shift as digamma.
inline BigReal polygamma(unsigned j, const BigReal& x, Precision digits) {
  if (j < 1) throw std::domain_error("polygamma: requires j >= 1 (use digamma for j = 0)");
  if (!(x > 0L)) throw std::domain_error("polygamma: requires x > 0");
  const long pad = (j + 1) * detail::neg_exponent10(x) + detail::neg_exponent10(x);
  const Precision pw(digits.digits() + 10 + static_cast<unsigned>(pad));
  const BigReal eps = pow10(-static_cast<long>(pw.digits()) + 2, pw);
  const BigReal xi = x.to_precision(pw);
  const unsigned long threshold = detail::shift_threshold(pw);

  unsigned long shift = 0;
  if (xi < static_cast<long>(threshold)) {
    const double xd = std::max(xi.to_double(), 0.0);
    shift = threshold - static_cast<unsigned long>(std::floor(std::min(xd, double(threshold))));
  }
  const BigReal jfac = factorial(j, pw);
  BigReal corr = BigReal::zero(pw);
  for (unsigned long i = 0; i < shift; ++i)
    corr = corr + jfac / pow(xi + static_cast<long>(i), static_cast<long>(j + 1));
  if (j % 2 == 1) corr = -corr;  // d^j/dx^j (1/x) = (-1)^j j! x^{-j-1}

  const BigReal y = xi + static_cast<long>(shift);
  // (-1)^{j-1} [ (j-1)!/y^j + j!/(2 y^{j+1}) + sum B_{2m} (2m+j-1)!/((2m)! y^{2m+j}) ]
  BigReal acc = factorial(j - 1, pw) / pow(y, static_cast<long>(j)) +
                (jfac / pow(y, static_cast<long>(j + 1))).mul_pow2(-1);
  const BigReal y2 = y * y;
  BigReal ypow = pow(y, static_cast<long>(j)) * y2;  // y^{2m+j} at m=1
  // ratio (2m+j-1)!/(2m)! maintained incrementally
  BigReal fac_ratio = factorial(j + 1, pw) / 2L;  // m=1: (j+1)!/2!
  bool done = false;
  for (unsigned m = 1; 2 * m <= max_bernoulli_index; ++m) {
    const BigReal term = bernoulli_number(2 * m, pw) * fac_ratio / ypow;
    acc = acc + term;
    if (abs(term) < eps * (abs(acc) + 1L)) {
      done = true;
      break;
    }
    ypow = ypow * y2;
    fac_ratio = fac_ratio * static_cast<long>(2 * m + j + 1) * static_cast<long>(2 * m + j) /
                (static_cast<long>(2 * m + 2) * static_cast<long>(2 * m + 1));
  }
  if (!done) throw std::runtime_error("polygamma: asymptotic series exhausted");
  if (j % 2 == 0) acc = -acc;
  return (acc - corr).to_precision(digits);
}

/// ln Gamma(x) for x > 0 via Stirling's series after recurrence shift.
inline BigReal log_gamma(const BigReal& x, Precision digits) {
  if (!(x > 0L)) throw std::domain_error("log_gamma: requires x > 0");
  const Precision pw(digits.digits() + 10 + static_cast<unsigned>(detail::neg_exponent10(x)));
  const BigReal eps = pow10(-static_cast<long>(pw.digits()) + 2, pw);
  const BigReal xi = x.to_precision(pw);
  const unsigned long threshold = detail::shift_threshold(pw);

  unsigned long shift = 0;
  if (xi < static_cast<long>(threshold)) {
    const double xd = std::max(xi.to_double(), 0.0);
    shift = threshold - static_cast<unsigned long>(std::floor(std::min(xd, double(threshold))));
  }
  BigReal corr = BigReal::zero(pw);
  for (unsigned long i = 0; i < shift; ++i) corr = corr + ln(xi + static_cast<long>(i));
  const BigReal y = xi + static_cast<long>(shift);

  BigReal acc = (y - BigReal::one(pw).mul_pow2(-1)) * ln(y) - y +
                ln(pi(pw).mul_pow2(1)).mul_pow2(-1);
  const BigReal y2 = y * y;
  BigReal ypow = y;  // y^{2m-1} at m=1
  bool done = false;
  for (unsigned m = 1; 2 * m <= max_bernoulli_index; ++m) {
    const BigReal term =
        bernoulli_number(2 * m, pw) / (static_cast<long>(2 * m) * static_cast<long>(2 * m - 1) * ypow);
    acc = acc + term;
    if (abs(term) < eps) {
      done = true;
      break;
    }
    ypow = ypow * y2;
  }
  if (!done) throw std::runtime_error("log_gamma: Stirling series exhausted");
  return (acc - corr).to_precision(digits);
}

/// Taylor data of Gamma at x0: exponentiates the polygamma log-series
///   ln Gamma(x0 + t) = ln Gamma(x0) + sum_{j>=1} psi^(j-1)(x0) t^j / j!
/// and scales by Gamma(x0).
inline GammaTaylor gamma_taylor(const BigReal& x0, unsigned order, Precision digits) {
  if (!(x0 > 0L)) throw std::domain_error("gamma_taylor: requires x0 > 0");
  const long pad = (order + 1) * detail::neg_exponent10(x0) + 2;
  const Precision pw(digits.digits() + 10 + static_cast<unsigned>(pad));
  const BigReal x = x0.to_precision(pw);

  const BigReal g0 = exp(log_gamma(x, pw));
  std::vector<BigReal> logser(order + 1, BigReal::zero(pw));
  if (order >= 1) logser[1] = digamma(x, pw);
  BigReal jfac(1L, pw);
  for (unsigned j = 2; j <= order; ++j) {
    jfac = jfac * static_cast<long>(j);
    logser[j] = polygamma(j - 1, x, pw) / jfac;
  }
  PowerSeries series = scale(exp_series(PowerSeries(std::move(logser))), g0);

  std::vector<BigReal> out;
  out.reserve(order + 1);
  for (unsigned i = 0; i <= order; ++i) out.push_back(series.coeff(i).to_precision(digits));
  return {x0.to_precision(digits), PowerSeries(std::move(out))};
}

/// (zeta'/zeta)^(ell)(s0) for s0 > 1: quotient of the Taylor data of zeta
/// at s0 (derivative series over value series), read off at order ell.
inline BigReal zeta_logderiv(unsigned ell, const BigReal& s0, Precision digits) {
  if (!(s0 > 1L)) throw std::domain_error("zeta_logderiv: requires s0 > 1");
  const long pad = (ell + 2) * detail::neg_exponent10(s0 - 1L);
  const Precision pw(digits.digits() + 10 + static_cast<unsigned>(pad));
  const HurwitzTaylor ht = hurwitz_taylor(s0.to_precision(pw), BigReal::one(pw), ell + 1, pw);
  const PowerSeries q = div(derivative(ht.series), ht.series);
  return (factorial(ell, pw) * q.coeff(ell)).to_precision(digits);
}

}  // namespace zetasum
