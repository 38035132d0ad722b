#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "zetasum/power_series.hpp"

using zetasum::BigReal;
using zetasum::LaurentSeries;
using zetasum::PowerSeries;
using zetasum::Precision;

namespace {

const Precision kP(40);

PowerSeries make(std::initializer_list<long> coeffs) {
  std::vector<BigReal> c;
  for (long v : coeffs) c.emplace_back(v, kP);
  return PowerSeries(std::move(c));
}

PowerSeries random_series(std::mt19937_64& rng, unsigned order) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<BigReal> c;
  for (unsigned i = 0; i <= order; ++i) c.emplace_back(std::to_string(dist(rng)), kP);
  return PowerSeries(std::move(c));
}

bool coeffwise_close(const PowerSeries& a, const PowerSeries& b, const BigReal& tol) {
  const unsigned k = std::min(a.order(), b.order());
  for (unsigned i = 0; i <= k; ++i)
    if (zetasum::abs(a.coeff(i) - b.coeff(i)) > tol) return false;
  return true;
}

// 40-digit constants for the hand-expanded exp check
const char* kGamma = "0.5772156649015328606065120900824024310422";
const char* kZeta2 = "1.644934066848226436472415166646025189219";

}  // namespace

TEST_CASE("series add/sub/scale") {
  CHECK(coeffwise_close(add(make({1, 1}), make({1, -1})), make({2, 0}), testutil::tol10(-39, kP)));
  CHECK(coeffwise_close(scale(make({1, 1}), BigReal(3, kP)), make({3, 3}),
                        testutil::tol10(-39, kP)));
  const PowerSeries z = sub(make({1, 0, 1}), make({1, 0, 1}));
  for (unsigned i = 0; i <= z.order(); ++i) CHECK(z.coeff(i).is_zero());
}

TEST_CASE("series multiplication") {
  // (1+t)(1-t) truncated at order 1 -> order-1 result
  const PowerSeries ab = mul(make({1, 1}), make({1, -1}));
  CHECK(ab.order() == 1);
  CHECK(ab.coeff(1).is_zero());
  // at order 2 the t^2 coefficient appears
  const PowerSeries ab2 = mul(make({1, 1, 0}), make({1, -1, 0}));
  CHECK(coeffwise_close(ab2, make({1, 0, -1}), testutil::tol10(-39, kP)));
  // hand convolution
  CHECK(coeffwise_close(mul(make({1, 1, 1}), make({1, 1, 1})), make({1, 2, 3}),
                        testutil::tol10(-39, kP)));
  // multiplicative identity
  const PowerSeries a = make({7, -3, 2});
  CHECK(coeffwise_close(mul(a, make({1, 0, 0})), a, testutil::tol10(-39, kP)));
}

TEST_CASE("series division") {
  // geometric series
  CHECK(coeffwise_close(div(make({1, 0, 0, 0}), make({1, -1, 0, 0})), make({1, 1, 1, 1}),
                        testutil::tol10(-38, kP)));
  const PowerSeries a = make({2, 5, -1, 4});
  CHECK(coeffwise_close(div(a, a), make({1, 0, 0, 0}), testutil::tol10(-38, kP)));
  CHECK_THROWS_AS(div(a, make({0, 1})), std::domain_error);
}

TEST_CASE("series exponential") {
  const PowerSeries e0 = exp_series(PowerSeries::zero(3, kP));
  CHECK(coeffwise_close(e0, make({1, 0, 0, 0}), testutil::tol10(-39, kP)));

  // exp(t) through order 4
  const PowerSeries et = exp_series(make({0, 1, 0, 0, 0}));
  CHECK_CLOSE(et.coeff(2), BigReal(1, kP) / 2L, testutil::tol10(-38, kP));
  CHECK_CLOSE(et.coeff(3), BigReal(1, kP) / 6L, testutil::tol10(-38, kP));
  CHECK_CLOSE(et.coeff(4), BigReal(1, kP) / 24L, testutil::tol10(-38, kP));

  CHECK_THROWS_AS(exp_series(make({1, 1})), std::domain_error);

  SECTION("exp of the Weierstrass log-series starts -gamma, (gamma^2+zeta(2))/2") {
    const BigReal g(kGamma, kP);
    const BigReal z2(kZeta2, kP);
    std::vector<BigReal> lw = {BigReal::zero(kP), -g, z2.mul_pow2(-1)};
    const PowerSeries w = exp_series(PowerSeries(lw));
    CHECK_CLOSE(w.coeff(1), -g, testutil::tol10(-38, kP));
    CHECK_CLOSE(w.coeff(2), (g * g + z2).mul_pow2(-1), testutil::tol10(-38, kP));
  }
}

TEST_CASE("derivative and antiderivative") {
  CHECK(coeffwise_close(derivative(make({1, 1, 1})), make({1, 2}), testutil::tol10(-39, kP)));
  CHECK(coeffwise_close(antiderivative(make({1})), make({0, 1}), testutil::tol10(-39, kP)));
  const PowerSeries s = make({0, 1, 0, 1});
  CHECK(coeffwise_close(antiderivative(derivative(s)), s, testutil::tol10(-38, kP)));
}

TEST_CASE("ring axioms on random series") {
  std::mt19937_64 rng(271828);
  const BigReal tol = testutil::tol10(-37, kP);
  for (int trial = 0; trial < 10; ++trial) {
    const PowerSeries a = random_series(rng, 6);
    const PowerSeries b = random_series(rng, 6);
    const PowerSeries c = random_series(rng, 6);
    CHECK(coeffwise_close(mul(a, b), mul(b, a), tol));
    CHECK(coeffwise_close(mul(mul(a, b), c), mul(a, mul(b, c)), tol));
    CHECK(coeffwise_close(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), tol));
  }
}

TEST_CASE("division and exponential identities on random series") {
  std::mt19937_64 rng(31337);
  const BigReal tol = testutil::tol10(-36, kP);
  for (int trial = 0; trial < 10; ++trial) {
    PowerSeries b = random_series(rng, 6);
    b.set_coeff(0, b.coeff(0) + 2L);  // keep the divisor a unit
    const PowerSeries a = random_series(rng, 6);
    CHECK(coeffwise_close(mul(div(a, b), b), a, tol));

    PowerSeries u = random_series(rng, 6);
    PowerSeries v = random_series(rng, 6);
    u.set_coeff(0, BigReal::zero(kP));
    v.set_coeff(0, BigReal::zero(kP));
    CHECK(coeffwise_close(exp_series(add(u, v)), mul(exp_series(u), exp_series(v)), tol));
  }
}

TEST_CASE("laurent series construction rules") {
  const PowerSeries reg = make({1, 2, 3});
  CHECK_NOTHROW(LaurentSeries(std::vector<BigReal>{BigReal::one(kP)}, reg));
  CHECK_NOTHROW(LaurentSeries(std::vector<BigReal>{}, reg));
  CHECK_THROWS_AS(LaurentSeries(std::vector<BigReal>{BigReal::one(kP), BigReal::one(kP)}, reg),
                  std::invalid_argument);
  CHECK(LaurentSeries(BigReal::zero(kP), reg).pole_order() == 0);
  CHECK(LaurentSeries(BigReal::one(kP), reg).pole_order() == 1);
}

TEST_CASE("logarithmic-derivative regular part") {
  const BigReal g(kGamma, kP);
  const char* kGamma1 = "-0.0728158454836767248605863758749013191377";
  const BigReal g1(kGamma1, kP);
  const char* kGamma2 = "-0.0096903631928723184845303860352125293590";
  const BigReal g2(kGamma2, kP);

  SECTION("zeta Laurent data reproduces R_0 = gamma and R_1 = -(gamma^2 + 2 gamma_1)") {
    // regular part of zeta(1+t): gamma - gamma_1 t + (gamma_2/2) t^2
    std::vector<BigReal> reg = {g, -g1, g2.mul_pow2(-1)};
    const LaurentSeries zl(BigReal::one(kP), PowerSeries(reg));
    const PowerSeries r = laurent_logderiv_regular(zl.derivative_series(), zl);
    CHECK_CLOSE(r.coeff(0), g, testutil::tol10(-38, kP));
    CHECK_CLOSE(r.coeff(1), -(g * g + g1.mul_pow2(1)), testutil::tol10(-38, kP));
  }

  SECTION("pure pole normalizes to zero regular part") {
    const LaurentSeries pole(-BigReal::one(kP), PowerSeries::zero(2, kP));
    const PowerSeries r = laurent_logderiv_regular(pole.derivative_series(), pole);
    for (unsigned i = 0; i <= r.order(); ++i) CHECK(zetasum::abs(r.coeff(i)).is_zero());
  }

  SECTION("zero residue and mismatched numerator are rejected") {
    const LaurentSeries flat(BigReal::zero(kP), make({1, 1}));
    const LaurentSeries ok(BigReal::one(kP), make({1, 1}));
    CHECK_THROWS_AS(laurent_logderiv_regular(ok.derivative_series(), flat), std::domain_error);
    CHECK_THROWS_AS(laurent_logderiv_regular(ok, ok), std::invalid_argument);
  }
}
