#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "zetasum/sums.hpp"

using zetasum::BigReal;
using zetasum::Constants;
using zetasum::Precision;
using zetasum::Prop;
using zetasum::PropositionCase;

namespace {

const Precision kP(40);
const char* kLn2 = "0.693147180559945309417232121458176568076";
const char* kGamma = "0.5772156649015328606065120900824024310422";

// shared across this suite: the coefficient caches behind it are what the
// propositions consume anyway
Constants& shared_constants() {
  static Constants consts(84);
  return consts;
}

}  // namespace

TEST_CASE("case validation") {
  const BigReal one = BigReal::one(kP);
  CHECK_THROWS_AS(PropositionCase(Prop::p1, 0, std::nullopt, BigReal("0.5", kP)),
                  std::domain_error);
  CHECK_THROWS_AS(PropositionCase(Prop::p1, 0, std::nullopt, -one), std::domain_error);
  CHECK_THROWS_AS(PropositionCase(Prop::p1, 0, 1u, one), std::domain_error);
  CHECK_THROWS_AS(PropositionCase(Prop::p3, 0, 0u, one, one), std::domain_error);
  CHECK_THROWS_AS(PropositionCase(Prop::p3, 0, 1u, one), std::domain_error);
  CHECK_THROWS_AS(PropositionCase(Prop::p3, 0, 1u, one, BigReal::zero(kP)), std::domain_error);
  CHECK_THROWS_AS(PropositionCase(Prop::p4, 0, std::nullopt, one), std::domain_error);
  CHECK_NOTHROW(PropositionCase(Prop::p4, 0, 0u, -BigReal(2, kP)));
}

TEST_CASE("alternating-series acceleration") {
  SECTION("alternating harmonic series to 15+ digits from 40 terms") {
    std::vector<BigReal> mags;
    for (long n = 1; n <= 40; ++n) mags.push_back(BigReal::one(kP) / n);
    CHECK_CLOSE(zetasum::accelerate_alternating(mags), BigReal(kLn2, kP),
                testutil::tol10(-15, kP));
  }
  SECTION("1/n^2 gives pi^2/12") {
    std::vector<BigReal> mags;
    for (long n = 1; n <= 40; ++n) mags.push_back(BigReal::one(kP) / (n * n));
    const BigReal pi = zetasum::pi(kP);
    CHECK_CLOSE(zetasum::accelerate_alternating(mags), pi * pi / 12L, testutil::tol10(-15, kP));
  }
  SECTION("shifted harmonic series gives 1 - ln 2") {
    std::vector<BigReal> mags;
    for (long n = 1; n <= 40; ++n) mags.push_back(BigReal::one(kP) / (n + 1));
    CHECK_CLOSE(zetasum::accelerate_alternating(mags), 1L - BigReal(kLn2, kP),
                testutil::tol10(-15, kP));
  }
  SECTION("too few terms rejected") {
    std::vector<BigReal> mags(3, BigReal::one(kP));
    CHECK_THROWS_AS(zetasum::accelerate_alternating(mags), std::domain_error);
  }
}

TEST_CASE("summand values") {
  Constants& consts = shared_constants();
  const BigReal one = BigReal::one(kP);
  const BigReal g(kGamma, kP);
  const BigReal pi = zetasum::pi(kP);

  SECTION("P1 at n = 1 is zeta(2) - 1 - gamma") {
    const PropositionCase c(Prop::p1, 0, std::nullopt, one);
    CHECK_CLOSE(zetasum::summand(c, 1, kP, consts), pi * pi / 6L - 1L - g,
                testutil::tol10(-34, kP));
  }
  SECTION("P2 at n = 1 is -gamma") {
    const PropositionCase c(Prop::p2, 0, std::nullopt, one);
    CHECK_CLOSE(zetasum::summand(c, 1, kP, consts), -g, testutil::tol10(-34, kP));
  }
  SECTION("P1 large-n asymptotics: summand ~ -gamma_1/n") {
    const PropositionCase c(Prop::p1, 0, std::nullopt, one);
    const BigReal g1 = consts.stieltjes(1, kP);
    for (unsigned long n : {50ul, 100ul}) {
      const BigReal lhs = zetasum::abs(zetasum::summand(c, n, kP, consts) * static_cast<long>(n) + g1);
      CHECK(lhs <= BigReal("0.02", kP) / static_cast<long>(n));
    }
  }
  SECTION("cancellation guard: value stable under 10 extra digits") {
    const PropositionCase c(Prop::p1, 0, std::nullopt, one);
    const BigReal v40 = zetasum::summand(c, 100, Precision(40), consts);
    const BigReal v50 = zetasum::summand(c, 100, Precision(50), consts);
    CHECK_CLOSE(v40, v50.to_precision(Precision(40)), testutil::tol10(-31, kP));
  }
}

TEST_CASE("left-hand sums reproduce the reference decimal anchors") {
  Constants& consts = shared_constants();
  const Precision p(30);
  const BigReal one = BigReal::one(p);
  const BigReal tol = zetasum::pow10(-12, p).mul_pow2(2);  // 4e-12 < 5e-12

  const auto s0 = zetasum::lhs_sum(PropositionCase(Prop::p1, 0, std::nullopt, one), p, consts);
  CHECK_CLOSE(s0.value, BigReal("-0.0462635927840", p), tol);

  const auto t0 = zetasum::lhs_sum(PropositionCase(Prop::p2, 0, std::nullopt, one), p, consts);
  CHECK_CLOSE(t0.value, BigReal("0.371990830350", p), tol);

  const auto u00 = zetasum::lhs_sum(PropositionCase(Prop::p4, 0, 0u, one), p, consts);
  CHECK_CLOSE(zetasum::abs(u00.value), BigReal("0.0975567", p), zetasum::pow10(-7, p) * 5L);
  CHECK(u00.value.sign() > 0);
}

TEST_CASE("right-hand sum structure") {
  Constants& consts = shared_constants();
  const Precision p(30);

  SECTION("P1 at z = 1 decomposes as gamma_1 ln 2 plus the k >= 2 tail") {
    const auto rhs = zetasum::rhs_sum(PropositionCase(Prop::p1, 0, std::nullopt, BigReal::one(p)),
                                      p, consts, zetasum::pow10(-24, p));
    const BigReal ln2 = zetasum::ln(BigReal(2, p));
    BigReal expect = consts.stieltjes(1, p) * ln2;
    BigReal kfac(1L, p);
    for (unsigned k = 2; k <= 60; ++k) {
      kfac = kfac * static_cast<long>(k);
      const BigReal li =
          (BigReal::one(p).mul_pow2(1 - static_cast<long>(k)) - 1L) * consts.zeta_int(k, p);
      BigReal term = consts.stieltjes(k, p) / kfac * li;
      if (k % 2 == 1) term = -term;
      expect = expect + term;
    }
    CHECK_CLOSE(rhs.value, expect, testutil::tol10(-21, p));
  }

  SECTION("j-shift consistency against a reindexed reimplementation") {
    const BigReal z(2, p);
    const auto rhs = zetasum::rhs_sum(PropositionCase(Prop::p1, 1, std::nullopt, z), p, consts,
                                      zetasum::pow10(-24, p));
    // same series written over m = k - 1
    const BigReal w = -(BigReal::one(p) / z);
    BigReal expect = BigReal::zero(p);
    BigReal mfac(1L, p);  // (m+1)! built incrementally
    for (unsigned m = 0; m <= 50; ++m) {
      mfac = mfac * static_cast<long>(m + 1);
      BigReal term = consts.stieltjes(m + 1, p) / mfac * zetasum::polylog_int(m + 2, w, p);
      if (m % 2 == 0) term = -term;
      expect = expect + term;
    }
    CHECK_CLOSE(rhs.value, expect, testutil::tol10(-21, p));
  }
}

TEST_CASE("verification records") {
  Constants& consts = shared_constants();
  const BigReal tol = zetasum::pow10(-20, kP);

  SECTION("P1 at the z = 1 anchor point") {
    const auto rec =
        zetasum::verify(PropositionCase(Prop::p1, 0, std::nullopt, BigReal::one(kP)), tol, kP, consts);
    CHECK(rec.pass);
    CHECK(rec.rel_diff <= tol);
  }
  SECTION("P1 away from the anchor point, z = 2") {
    const auto rec =
        zetasum::verify(PropositionCase(Prop::p1, 0, std::nullopt, BigReal(2, kP)), tol, kP, consts);
    CHECK(rec.pass);
  }
  SECTION("P3 with j = ell = 1 at a = 1") {
    const auto rec = zetasum::verify(
        PropositionCase(Prop::p3, 1, 1u, BigReal::one(kP), BigReal::one(kP)), tol, kP, consts);
    CHECK(rec.pass);
  }
  SECTION("tolerance floor enforced") {
    CHECK_THROWS_AS(zetasum::verify(PropositionCase(Prop::p1, 0, std::nullopt, BigReal::one(kP)),
                                    zetasum::pow10(-26, kP), kP, consts),
                    std::invalid_argument);
  }
}

TEST_CASE("magnitude decays as z grows") {
  Constants& consts = shared_constants();
  const Precision p(25);
  auto mag = [&](Prop prop, std::optional<unsigned> ell, std::optional<BigReal> a,
                 const char* zs) {
    const PropositionCase c(prop, 0, ell, BigReal(zs, p), a);
    return zetasum::abs(zetasum::lhs_sum(c, p, consts).value);
  };
  for (Prop prop : {Prop::p1, Prop::p2, Prop::p3, Prop::p4, Prop::t_general}) {
    std::optional<unsigned> ell;
    std::optional<BigReal> a;
    if (prop == Prop::p3) {
      ell = 1u;
      a = BigReal::one(p);
    } else if (prop == Prop::p4 || prop == Prop::t_general) {
      ell = 1u;
    }
    const BigReal m2 = mag(prop, ell, a, "2");
    const BigReal m4 = mag(prop, ell, a, "4");
    const BigReal m8 = mag(prop, ell, a, "8");
    INFO("prop = " << zetasum::prop_name(prop));
    CHECK(m4 < m2);
    CHECK(m8 < m4);
  }
}

TEST_CASE("rhs reports k_max exhaustion instead of silent truncation") {
  Constants small(10);
  const Precision p(30);
  CHECK_THROWS_AS(
      zetasum::rhs_sum(PropositionCase(Prop::p2, 0, std::nullopt, BigReal::one(p)), p, small),
      std::runtime_error);
}
