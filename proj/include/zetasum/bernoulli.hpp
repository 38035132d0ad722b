#pragma once

#include <gmpxx.h>

#include <mutex>
#include <stdexcept>
#include <vector>

#include "zetasum/bigreal.hpp"

namespace zetasum {

inline constexpr unsigned max_bernoulli_index = 200;

namespace detail {

/// Exact Bernoulli numbers from the integer recurrence
///   sum_{k=0}^{n} C(n+1,k) B_k = 0,  B_0 = 1,
/// computed once as rationals and shared process-wide. Values below the
/// final rounding step are exact, so Euler-Maclaurin tails see no
/// accumulated coefficient error.
class BernoulliCache {
 public:
  // by value: a reference into values_ would dangle once another thread
  // extends the vector
  static mpq_class rational(unsigned n) {
    static BernoulliCache cache;
    std::lock_guard<std::mutex> lock(cache.mu_);
    cache.extend(n);
    return cache.values_[n];
  }

 private:
  BernoulliCache() { values_.emplace_back(1); }

  void extend(unsigned n) {
    while (values_.size() <= n) {
      const unsigned m = static_cast<unsigned>(values_.size());
      // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1,k) B_k
      mpq_class sum(0);
      mpz_class binom;
      for (unsigned k = 0; k < m; ++k) {
        if (k > 1 && (k % 2) == 1) continue;  // odd-index values vanish
        mpz_bin_uiui(binom.get_mpz_t(), m + 1, k);
        sum += mpq_class(binom) * values_[k];
      }
      sum /= -static_cast<long>(m + 1);
      sum.canonicalize();
      values_.push_back(sum);
    }
  }

  std::mutex mu_;
  std::vector<mpq_class> values_;
};

inline BigReal rational_to_bigreal(const mpq_class& q, Precision prec) {
  BigReal r(0L, prec);
  mpfr_set_q(r.raw_mutable(), q.get_mpq_t(), MPFR_RNDN);
  r.check_finite();
  return r;
}

}  // namespace detail

/// Bernoulli number B_n rounded to `prec`. Only even orders (plus B_0 and
/// B_1 = -1/2) are accepted; odd n > 1 is rejected since nothing downstream
/// consumes the zero values.
inline BigReal bernoulli_number(unsigned n, Precision prec) {
  if (n > 1 && (n % 2) == 1)
    throw std::domain_error("bernoulli_number: odd index > 1 rejected");
  if (n > max_bernoulli_index)
    throw std::domain_error("bernoulli_number: index exceeds configured maximum");
  return detail::rational_to_bigreal(detail::BernoulliCache::rational(n), prec);
}

}  // namespace zetasum
