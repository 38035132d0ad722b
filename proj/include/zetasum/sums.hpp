#pragma once

#include <gmpxx.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetasum/bigreal.hpp"
#include "zetasum/constants.hpp"
#include "zetasum/special.hpp"

namespace zetasum {

enum class Prop { p1, p2, p3, p4, t_general };

inline const char* prop_name(Prop p) {
  switch (p) {
    case Prop::p1: return "P1";
    case Prop::p2: return "P2";
    case Prop::p3: return "P3";
    case Prop::p4: return "P4";
    case Prop::t_general: return "T";
  }
  return "?";
}

/// One verification instance. Domains follow the sum definitions: real z
/// with |z| >= 1 and z != -1; the derivative order ell is >= 1 for P3,
/// >= 0 for P4 and the Gamma-derivative family, absent otherwise; the
/// Hurwitz parameter a > 0 applies to P3 only.
struct PropositionCase {
  Prop prop;
  unsigned j;
  std::optional<unsigned> ell;
  BigReal z;
  std::optional<BigReal> a;

  PropositionCase(Prop p, unsigned j_, std::optional<unsigned> ell_, BigReal z_,
                  std::optional<BigReal> a_ = std::nullopt)
      : prop(p), j(j_), ell(std::move(ell_)), z(std::move(z_)), a(std::move(a_)) {
    validate();
  }

  void validate() const {
    if (abs(z) < 1L || z == -1L)
      throw std::domain_error("PropositionCase: requires |z| >= 1 and z != -1");
    switch (prop) {
      case Prop::p1:
      case Prop::p2:
        if (ell) throw std::domain_error("PropositionCase: ell does not apply to P1/P2");
        if (a) throw std::domain_error("PropositionCase: a does not apply to P1/P2");
        break;
      case Prop::p3:
        if (!ell || *ell < 1) throw std::domain_error("PropositionCase: P3 requires ell >= 1");
        if (!a || !(*a > 0L)) throw std::domain_error("PropositionCase: P3 requires a > 0");
        break;
      case Prop::p4:
      case Prop::t_general:
        if (!ell) throw std::domain_error("PropositionCase: P4/T require ell >= 0");
        if (a) throw std::domain_error("PropositionCase: a applies to P3 only");
        break;
    }
  }

  unsigned ell_or_zero() const { return ell ? *ell : 0u; }
};

struct SumResult {
  BigReal value;
  unsigned long terms;
};

struct VerificationRecord {
  PropositionCase kase;
  BigReal lhs;
  BigReal rhs;
  BigReal abs_diff;
  BigReal rel_diff;
  unsigned long lhs_terms;
  unsigned long rhs_terms;
  bool pass;
  long wall_ms;
  std::string error;  // nonempty when an evaluator failed
};

/// Chebyshev-weighted estimate of sum_{m>=0} (-1)^m a_m from the first d
/// values (Cohen / Rodriguez-Villegas / Zagier). For totally monotone a_m
/// the error decays like (3 + sqrt 8)^{-d}; the functional is linear, so
/// signed smooth inputs are fine too. Weights come from the exact integer
/// coefficients of T_d(2x - 1), so the only rounding is in the final
/// weighted sum, run with guard digits matching the weight size.
inline BigReal accelerate_alternating(const std::vector<BigReal>& terms) {
  const std::size_t d = terms.size();
  if (d < 4) throw std::domain_error("accelerate_alternating: needs at least 4 terms");

  std::vector<mpz_class> prev{mpz_class(1)};
  std::vector<mpz_class> cur{mpz_class(-1), mpz_class(2)};
  for (std::size_t n = 1; n < d; ++n) {
    std::vector<mpz_class> nxt(n + 2, mpz_class(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      nxt[i + 1] += 4 * cur[i];
      nxt[i] -= 2 * cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) nxt[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  mpz_class p_at_m1(0);
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (i % 2 == 0) p_at_m1 += cur[i];
    else p_at_m1 -= cur[i];
  }
  // (P(-1) - P(x)) / (1 + x) = sum beta_k x^k, solved top-down
  std::vector<mpz_class> beta(d);
  beta[d - 1] = -cur[d];
  for (std::size_t k = d - 1; k >= 1; --k) beta[k - 1] = -cur[k] - beta[k];

  unsigned in_digits = 20;
  for (const auto& t : terms) in_digits = std::max(in_digits, t.digits());
  const Precision pw(in_digits + static_cast<unsigned>(0.8 * d) + 12);

  BigReal s = BigReal::zero(pw);
  BigReal w(0L, pw);
  for (std::size_t k = 0; k < d; ++k) {
    mpfr_set_z(w.raw_mutable(), beta[k].get_mpz_t(), MPFR_RNDN);
    s = s + w * terms[k].to_precision(pw);
  }
  mpfr_set_z(w.raw_mutable(), p_at_m1.get_mpz_t(), MPFR_RNDN);
  return (s / w).to_precision(Precision(in_digits));
}

namespace detail {

/// Low-order constant subtracted inside each bracket.
inline BigReal bracket_constant(const PropositionCase& c, Precision digits, Constants& consts) {
  switch (c.prop) {
    case Prop::p1:
    case Prop::p2:
      return consts.euler_gamma(digits);
    case Prop::p3:
      return consts.stieltjes_a(*c.ell, c.a->to_precision(digits), digits);
    case Prop::p4:
      return consts.eta_coeffs(*c.ell, digits)[*c.ell];
    case Prop::t_general:
      return consts.gamma_c_coeffs(*c.ell, digits)[*c.ell] / static_cast<long>(*c.ell + 1);
  }
  throw std::logic_error("bracket_constant: unreachable");
}

inline BigReal bracket_value(const PropositionCase& c, unsigned long n, Precision digits,
                             const BigReal& low_const) {
  const Precision pw = digits;
  const long ln = static_cast<long>(n);
  switch (c.prop) {
    case Prop::p1: {
      const BigReal s0 = 1L + BigReal::one(pw) / ln;
      const BigReal zeta_val = hurwitz_taylor(s0, BigReal::one(pw), 0, pw).series.coeff(0);
      return zeta_val - ln - low_const;
    }
    case Prop::p2: {
      const BigReal gam = gamma_taylor(BigReal::one(pw) / ln, 0, pw).series.coeff(0);
      return BigReal(ln, pw) - gam - low_const;
    }
    case Prop::p3: {
      const unsigned l = *c.ell;
      const BigReal s0 = 1L + BigReal::one(pw) / ln;
      const HurwitzTaylor ht = hurwitz_taylor(s0, c.a->to_precision(pw), l, pw);
      const BigReal deriv = factorial(l, pw) * ht.series.coeff(l);
      BigReal sub = factorial(l, pw) * ui_pow(n, l + 1, pw) + low_const;
      if (l % 2 == 1) sub = -sub;
      return deriv - sub;
    }
    case Prop::p4: {
      const unsigned l = *c.ell;
      const BigReal s0 = 1L + BigReal::one(pw) / ln;
      const BigReal deriv = zeta_logderiv(l, s0, pw);
      BigReal poleterm = factorial(l, pw) * ui_pow(n, l + 1, pw);
      if (l % 2 == 1) poleterm = -poleterm;
      return deriv + poleterm + factorial(l, pw) * low_const;
    }
    case Prop::t_general: {
      const unsigned l = *c.ell;
      const GammaTaylor gt = gamma_taylor(BigReal::one(pw) / ln, l, pw);
      const BigReal deriv = factorial(l, pw) * gt.series.coeff(l);
      BigReal poleterm = factorial(l, pw) * ui_pow(n, l + 1, pw);
      if (l % 2 == 1) poleterm = -poleterm;
      return deriv - poleterm - low_const;
    }
  }
  throw std::logic_error("bracket_value: unreachable");
}

inline double log10_or(const BigReal& x, double fallback) {
  const double d = std::abs(x.to_double());
  return d > 0 && std::isfinite(d) ? std::log10(d) : fallback;
}

}  // namespace detail

/// The bracketed summand of the given case at index n, from the
/// independent function evaluators plus the single low-order constant the
/// bracket subtracts.
inline BigReal summand(const PropositionCase& c, unsigned long n, Precision digits,
                       Constants& consts) {
  if (n < 1) throw std::domain_error("summand: requires n >= 1");
  return detail::bracket_value(c, n, digits, detail::bracket_constant(c, digits, consts));
}

/// Direct/accelerated evaluation of the defining sum over n. At z = 1 the
/// series only converges conditionally, so the alternating acceleration is
/// applied to ~1.4 summand values per requested digit (grown until two
/// estimates agree); for |z| > 1 plain summation runs until the geometric
/// tail bound closes below `abs_target`.
inline SumResult lhs_sum(const PropositionCase& c, Precision digits, Constants& consts,
                         std::optional<BigReal> abs_target = std::nullopt) {
  const BigReal target =
      abs_target ? abs_target->to_precision(digits) : pow10(-static_cast<long>(digits.digits()) + 13, digits);
  const double target_digits = std::max(6.0, -detail::log10_or(target, -30));
  const unsigned l_eff = c.ell_or_zero();

  const bool at_one = (c.z == 1L);
  const double az = std::abs(c.z.to_double());
  unsigned long d0 = static_cast<unsigned long>(1.4 * target_digits) + 12;
  const unsigned long n_cap =
      at_one ? 6 * d0 + 64 : static_cast<unsigned long>(target_digits / std::max(std::log10(az), 0.02)) + 48;

  const long pad = static_cast<long>((l_eff + 2) * std::ceil(std::log10(static_cast<double>(n_cap) + 8.0))) + 15;
  const Precision p_eval(static_cast<unsigned>(digits.digits() + pad));
  const BigReal low_const = detail::bracket_constant(c, p_eval, consts);
  const bool overall_minus = (c.prop == Prop::t_general);

  if (at_one) {
    std::vector<BigReal> terms;  // terms[m] = bracket(m+1) / (m+1)^j
    terms.reserve(d0 + 16);
    auto extend_to = [&](unsigned long d) {
      while (terms.size() < d) {
        const unsigned long n = terms.size() + 1;
        BigReal t = detail::bracket_value(c, n, p_eval, low_const);
        if (c.j > 0) t = t / ui_pow(n, c.j, p_eval);
        terms.push_back(std::move(t));
      }
    };
    unsigned long d = d0;
    extend_to(d);
    for (;;) {
      const BigReal full = accelerate_alternating(terms);
      const BigReal reduced =
          accelerate_alternating(std::vector<BigReal>(terms.begin(), terms.end() - 8));
      if (abs(full - reduced) <= target.mul_pow2(-1)) {
        BigReal v = -full;  // sum over n starts with the n = 1 (negative-signed) term
        if (overall_minus) v = -v;
        return {v.to_precision(digits), d};
      }
      if (d >= n_cap)
        throw std::runtime_error("lhs_sum: acceleration failed to stabilize at z = 1");
      d = std::min<unsigned long>(n_cap, d + std::max<unsigned long>(8, d / 4));
      extend_to(d);
    }
  }

  // |z| > 1: geometric decay
  const BigReal zinv = BigReal::one(p_eval) / c.z.to_precision(p_eval);
  const BigReal r = abs(zinv);
  const BigReal geo = r / (1L - r);
  BigReal acc = BigReal::zero(p_eval);
  BigReal zpow = BigReal::one(p_eval);
  unsigned small_in_a_row = 0;
  for (unsigned long n = 1; n <= n_cap; ++n) {
    zpow = zpow * zinv;
    BigReal t = detail::bracket_value(c, n, p_eval, low_const) * zpow;
    if (c.j > 0) t = t / ui_pow(n, c.j, p_eval);
    if (n % 2 == 1) t = -t;
    acc = acc + t;
    const BigReal bound = abs(t) * geo;
    if (n >= 6 && bound <= target.mul_pow2(-1)) {
      if (++small_in_a_row >= 2) {
        if (overall_minus) acc = -acc;
        return {acc.to_precision(digits), n};
      }
    } else {
      small_in_a_row = 0;
    }
  }
  throw std::runtime_error("lhs_sum: direct summation did not converge within term cap");
}

namespace detail {

struct TailTerms {
  // term for index k = k0 + m
  std::function<BigReal(unsigned long)> term;
  unsigned long k0;
};

inline TailTerms rhs_term_generator(const PropositionCase& c, Precision p, Constants& consts) {
  const unsigned l = c.ell_or_zero();
  const BigReal w = -(BigReal::one(p) / c.z.to_precision(p));
  const unsigned long k0 = (c.prop == Prop::p1 || c.prop == Prop::p2) ? 1 : l + 1;
  const unsigned kmax = consts.kmax();

  switch (c.prop) {
    case Prop::p1:
    case Prop::p3: {
      // fetched lazily per k: this family stops well before k_max
      const BigReal a = c.prop == Prop::p3 ? c.a->to_precision(p) : BigReal::one(p);
      auto f = [&consts, c, w, a, p, l](unsigned long k) {
        const unsigned idx = static_cast<unsigned>(c.j + k - l);
        BigReal t = consts.stieltjes_a(static_cast<unsigned>(k), a, p) /
                    factorial(static_cast<unsigned long>(k - l), p) * polylog_int(idx, w, p);
        if (k % 2 == 1) t = -t;
        return t;
      };
      return {std::move(f), k0};
    }
    case Prop::p2: {
      auto cs = std::make_shared<const std::vector<BigReal>>(consts.gamma_c_coeffs(kmax, p));
      auto f = [cs, c, w, p](unsigned long k) {
        return -((*cs)[k] / factorial(k + 1, p) *
                 polylog_int(static_cast<unsigned>(c.j + k), w, p));
      };
      return {std::move(f), k0};
    }
    case Prop::p4: {
      auto es = std::make_shared<const std::vector<BigReal>>(consts.eta_coeffs(kmax, p));
      auto f = [es, c, w, p, l](unsigned long k) {
        const BigReal fac = factorial(k, p) / factorial(k - l, p);
        return -(fac * (*es)[k] * polylog_int(static_cast<unsigned>(c.j + k - l), w, p));
      };
      return {std::move(f), k0};
    }
    case Prop::t_general: {
      auto cs = std::make_shared<const std::vector<BigReal>>(consts.gamma_c_coeffs(kmax, p));
      auto f = [cs, c, w, p, l](unsigned long k) {
        return -((*cs)[k] / (static_cast<long>(k + 1) * factorial(k - l, p)) *
                 polylog_int(static_cast<unsigned>(c.j + k - l), w, p));
      };
      return {std::move(f), k0};
    }
  }
  throw std::logic_error("rhs_term_generator: unreachable");
}

}  // namespace detail

/// Coefficient-series evaluation of the sum: Stieltjes-type families are
/// summed directly with the three-consecutive-small-terms stop; the
/// Gamma- and eta-type families have alternating tails whose terms do not
/// decay to the stop threshold (the underlying expansions live on the
/// convergence boundary), so their value is recovered with the same
/// Chebyshev acceleration used on the left side. Exhausting k_max before
/// either strategy closes is an error, never a silent truncation.
inline SumResult rhs_sum(const PropositionCase& c, Precision digits, Constants& consts,
                         std::optional<BigReal> abs_target = std::nullopt) {
  const BigReal target =
      abs_target ? abs_target->to_precision(digits) : pow10(-static_cast<long>(digits.digits()) + 13, digits);
  const double target_digits = std::max(6.0, -detail::log10_or(target, -30));
  const Precision p_rhs(digits.digits() + 14);
  const bool accelerated =
      (c.prop == Prop::p2 || c.prop == Prop::p4 || c.prop == Prop::t_general);

  const unsigned long kmax = consts.kmax();
  const unsigned long k0_est = (c.prop == Prop::p1 || c.prop == Prop::p2) ? 1 : c.ell_or_zero() + 1;
  if (k0_est + (accelerated ? 15 : 8) > kmax)
    throw std::runtime_error("rhs_sum: k_max too small for this case");
  auto gen = detail::rhs_term_generator(c, p_rhs, consts);

  if (!accelerated) {
    BigReal acc = BigReal::zero(p_rhs);
    unsigned small_in_a_row = 0;
    const BigReal stop = target.mul_pow2(-2);
    for (unsigned long k = gen.k0; k <= kmax; ++k) {
      const BigReal t = gen.term(k);
      acc = acc + t;
      if (abs(t) <= stop) {
        if (++small_in_a_row >= 3) return {acc.to_precision(digits), k - gen.k0 + 1};
      } else {
        small_in_a_row = 0;
      }
    }
    throw std::runtime_error("rhs_sum: k_max exhausted before the series converged");
  }

  const unsigned long avail = kmax - gen.k0 + 1;
  unsigned long d = std::min<unsigned long>(
      avail, static_cast<unsigned long>(target_digits / 0.42) + 12);
  std::vector<BigReal> terms;
  terms.reserve(d);
  auto extend_to = [&](unsigned long dd) {
    while (terms.size() < dd) terms.push_back(gen.term(gen.k0 + terms.size()));
  };
  extend_to(d);

  // the acceleration assumes a strictly alternating tail; verify it
  auto alternating = [&terms] {
    for (std::size_t m = 0; m + 1 < terms.size(); ++m)
      if (terms[m].sign() == 0 || terms[m].sign() != -terms[m + 1].sign()) return false;
    return true;
  };

  if (alternating()) {
    for (;;) {
      std::vector<BigReal> mags;
      mags.reserve(terms.size());
      for (const auto& t : terms) mags.push_back(abs(t));
      const BigReal full = accelerate_alternating(mags);
      const BigReal reduced =
          accelerate_alternating(std::vector<BigReal>(mags.begin(), mags.end() - 8));
      if (abs(full - reduced) <= target.mul_pow2(-1)) {
        BigReal v = terms[0].sign() >= 0 ? full : -full;
        return {v.to_precision(digits), d};
      }
      if (d >= avail)
        throw std::runtime_error("rhs_sum: k_max exhausted before acceleration stabilized");
      d = std::min<unsigned long>(avail, d + 12);
      extend_to(d);
      if (!alternating()) break;
    }
  }

  // fallback: direct summation with the standard stop rule
  BigReal acc = BigReal::zero(p_rhs);
  unsigned small_in_a_row = 0;
  const BigReal stop = target.mul_pow2(-2);
  for (unsigned long k = gen.k0; k <= kmax; ++k) {
    const BigReal t = (k - gen.k0 < terms.size()) ? terms[k - gen.k0] : gen.term(k);
    acc = acc + t;
    if (abs(t) <= stop) {
      if (++small_in_a_row >= 3) return {acc.to_precision(digits), k - gen.k0 + 1};
    } else {
      small_in_a_row = 0;
    }
  }
  throw std::runtime_error("rhs_sum: k_max exhausted before the series converged");
}

/// Runs both sides with independent code paths and compares. Passing means
/// relative agreement within tol, with the absolute difference standing in
/// once |rhs| drops below 1e-3.
inline VerificationRecord verify(const PropositionCase& c, const BigReal& tol, Precision digits,
                                 Constants& consts) {
  if (tol < pow10(-static_cast<long>(digits.digits()) + 15, digits))
    throw std::invalid_argument("verify: tol must be >= 10^-(digits-15)");
  const auto t0 = std::chrono::steady_clock::now();

  const BigReal side_target = tol.to_precision(digits) * pow10(-4, digits);
  const SumResult lhs = lhs_sum(c, digits, consts, side_target);
  const SumResult rhs = rhs_sum(c, digits, consts, side_target);

  const BigReal abs_diff = abs(lhs.value - rhs.value);
  const BigReal arhs = abs(rhs.value);
  const BigReal milli = pow10(-3, digits);
  const BigReal rel_diff = arhs.is_zero() ? abs_diff : abs_diff / arhs;
  const bool pass = (arhs >= milli) ? (rel_diff <= tol) : (abs_diff <= tol);

  const auto t1 = std::chrono::steady_clock::now();
  const long ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return {c, lhs.value, rhs.value, abs_diff, rel_diff, lhs.terms, rhs.terms, pass, ms, ""};
}

}  // namespace zetasum
