#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "zetasum/bigreal.hpp"
#include "zetasum/power_series.hpp"
#include "zetasum/special.hpp"

namespace zetasum {

enum class Family { stieltjes, stieltjes_a, gamma_c, eta, zeta };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::stieltjes: return "stieltjes";
    case Family::stieltjes_a: return "stieltjes_a";
    case Family::gamma_c: return "gamma_c";
    case Family::eta: return "eta";
    case Family::zeta: return "zeta";
  }
  return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
  if (s == "stieltjes") return Family::stieltjes;
  if (s == "stieltjes_a") return Family::stieltjes_a;
  if (s == "gamma_c") return Family::gamma_c;
  if (s == "eta") return Family::eta;
  if (s == "zeta") return Family::zeta;
  return std::nullopt;
}

/// Keyed cache of coefficient values. Concurrent readers are fine; each
/// key is computed at most once (later readers block on the first
/// computation's future). Entries never change once stored.
class ConstantsTable {
 public:
  static std::string key_string(Family f, unsigned k, const std::string& a_key, unsigned digits) {
    std::ostringstream os;
    os << family_name(f) << '/' << k << '/' << a_key << '/' << digits;
    return os.str();
  }

  BigReal get_or_compute(const std::string& key, const std::function<BigReal()>& compute) {
    std::shared_future<BigReal> fut;
    bool owner = false;
    std::promise<BigReal> prom;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = entries_.find(key);
      if (it != entries_.end()) {
        fut = it->second;
      } else {
        fut = prom.get_future().share();
        entries_.emplace(key, fut);
        owner = true;
      }
    }
    if (owner) {
      try {
        prom.set_value(compute());
        {
          std::lock_guard<std::mutex> lock(mu_);
          dirty_ = true;
        }
      } catch (...) {
        {
          std::lock_guard<std::mutex> lock(mu_);
          entries_.erase(key);
        }
        prom.set_exception(std::current_exception());
        throw;
      }
    }
    return fut.get();
  }

  bool contains(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.count(key) != 0;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
  }

  bool dirty() const {
    std::lock_guard<std::mutex> lock(mu_);
    return dirty_;
  }

  /// Loads previously persisted entries. Malformed files are rejected;
  /// unknown families are skipped rather than fatal.
  void load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) return;
    nlohmann::json j;
    in >> j;
    if (!j.is_object() || j.value("version", 0) != 1)
      throw std::runtime_error("constants cache: unsupported file version");
    const auto& entries = j.at("entries");
    std::lock_guard<std::mutex> lock(mu_);
    for (auto it = entries.begin(); it != entries.end(); ++it) {
      const std::string& key = it.key();
      const auto digits_pos = key.rfind('/');
      if (digits_pos == std::string::npos) continue;
      const unsigned digits = static_cast<unsigned>(std::stoul(key.substr(digits_pos + 1)));
      if (digits < 20) continue;
      std::promise<BigReal> p;
      p.set_value(BigReal(it.value().get<std::string>(), Precision(digits)));
      entries_.emplace(key, p.get_future().share());
    }
  }

  /// Atomically rewrites the cache file (temp file + rename).
  void save_json(const std::filesystem::path& path) const {
    nlohmann::json entries = nlohmann::json::object();
    {
      std::lock_guard<std::mutex> lock(mu_);
      for (const auto& [key, fut] : entries_) {
        if (fut.wait_for(std::chrono::seconds(0)) != std::future_status::ready) continue;
        const BigReal v = fut.get();
        entries[key] = v.to_string(v.digits() + 12);
      }
    }
    nlohmann::json j;
    j["version"] = 1;
    j["entries"] = std::move(entries);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("constants cache: cannot write " + tmp.string());
      out << j.dump(1) << '\n';
    }
    std::filesystem::rename(tmp, path);
    std::lock_guard<std::mutex> lock(mu_);
    dirty_ = false;
  }

 private:
  mutable std::mutex mu_;
  mutable bool dirty_ = false;
  std::map<std::string, std::shared_future<BigReal>> entries_;
};

/// The four coefficient families around s = 1 (and their zeta-value
/// helper), computed on demand and cached per (family, index, parameter,
/// digits).
class Constants {
 public:
  explicit Constants(unsigned kmax = 60) : kmax_(kmax) {}

  unsigned kmax() const { return kmax_; }
  void set_kmax(unsigned kmax) { kmax_ = kmax; }

  ConstantsTable& table() { return table_; }

  /// Euler's constant, as -psi(1).
  BigReal euler_gamma(Precision digits) const { return -digamma(BigReal::one(digits), digits); }

  /// zeta(k) for integer k >= 2.
  BigReal zeta_int(unsigned k, Precision digits) {
    if (k < 2) throw std::domain_error("zeta_int: requires k >= 2");
    const std::string key = ConstantsTable::key_string(Family::zeta, k, "", digits.digits());
    return table_.get_or_compute(key, [&] {
      const Precision pw(digits.digits() + 8);
      return hurwitz_taylor(BigReal(static_cast<long>(k), pw), BigReal::one(pw), 0, pw)
          .series.coeff(0)
          .to_precision(digits);
    });
  }

  /// Stieltjes constant gamma_k (the a = 1 case of the Hurwitz family).
  BigReal stieltjes(unsigned k, Precision digits) {
    return stieltjes_a(k, BigReal::one(digits), digits);
  }

  /// Generalized Stieltjes constant gamma_k(a) for a > 0, by
  /// Euler-Maclaurin applied to ln^k(x+a)/(x+a): partial sum to N, minus
  /// the antiderivative ln^{k+1}(N+a)/(k+1), minus the midpoint f(N)/2,
  /// minus Bernoulli-weighted odd derivatives at N. Derivatives come from
  /// the closed-form coefficient recurrence for P_m in
  /// f^(m)(x) = P_m(ln u)/u^{m+1}. (N, M) grow until two successive
  /// parameter sets agree to 10^{-(digits-5)}.
  BigReal stieltjes_a(unsigned k, const BigReal& a, Precision digits) {
    if (k > kmax_) throw std::domain_error("stieltjes_a: k exceeds configured maximum");
    return stieltjes_a_uncapped(k, a, digits);
  }

  /// Laurent data of zeta about s = 1: residue 1 plus the regular series
  /// sum_k (-1)^k gamma_k t^k / k!, to order K. (K may exceed kmax by the
  /// two guard orders eta_coeffs needs.)
  LaurentSeries zeta_laurent(unsigned K, Precision digits) {
    std::vector<BigReal> reg;
    reg.reserve(K + 1);
    BigReal kfac(1L, digits);
    for (unsigned k = 0; k <= K; ++k) {
      if (k > 0) kfac = kfac * static_cast<long>(k);
      BigReal c = stieltjes_a_uncapped(k, BigReal::one(digits), digits) / kfac;
      if (k % 2 == 1) c = -c;
      reg.push_back(std::move(c));
    }
    return LaurentSeries(BigReal::one(digits), PowerSeries(std::move(reg)));
  }

  /// Taylor coefficients c_0..c_K of Gamma(x) - 1/x normalized so that
  /// Gamma(x) - 1/x = sum c_j x^j / (j+1)!. Built by exponentiating
  /// ln(x Gamma(x)) = -gamma x + sum_{k>=2} (-1)^k zeta(k) x^k / k,
  /// dropping the unit constant term, shifting down one power and
  /// rescaling.
  std::vector<BigReal> gamma_c_coeffs(unsigned K, Precision digits) {
    if (K > kmax_) throw std::domain_error("gamma_c_coeffs: K exceeds configured maximum");
    return family_batch(Family::gamma_c, K, digits, [&](Precision pw) {
      std::vector<BigReal> lw(K + 2, BigReal::zero(pw));
      lw[1] = -euler_gamma(pw);
      for (unsigned k = 2; k <= K + 1; ++k) {
        BigReal t = zeta_int(k, pw) / static_cast<long>(k);
        if (k % 2 == 1) t = -t;
        lw[k] = std::move(t);
      }
      const PowerSeries w = exp_series(PowerSeries(std::move(lw)));
      std::vector<BigReal> c;
      c.reserve(K + 1);
      BigReal fac(1L, pw);
      for (unsigned j = 0; j <= K; ++j) {
        fac = fac * static_cast<long>(j + 1);
        c.push_back(w.coeff(j + 1) * fac);
      }
      return c;
    });
  }

  /// Laurent coefficients eta_0..eta_K of zeta'/zeta about s = 1 with the
  /// convention zeta'/zeta = -1/(s-1) - sum eta_j (s-1)^j, via termwise
  /// differentiation of the zeta Laurent data and the
  /// logarithmic-derivative series quotient.
  std::vector<BigReal> eta_coeffs(unsigned K, Precision digits) {
    if (K > kmax_) throw std::domain_error("eta_coeffs: K exceeds configured maximum");
    return family_batch(Family::eta, K, digits, [&](Precision pw) {
      const LaurentSeries zl = zeta_laurent(K + 2, pw);
      const PowerSeries r = laurent_logderiv_regular(zl.derivative_series(), zl);
      std::vector<BigReal> e;
      e.reserve(K + 1);
      for (unsigned j = 0; j <= K; ++j) e.push_back(-r.coeff(j));
      return e;
    });
  }

  void load_cache(const std::filesystem::path& path) { table_.load_json(path); }
  void save_cache(const std::filesystem::path& path) const { table_.save_json(path); }

 private:
  BigReal stieltjes_a_uncapped(unsigned k, const BigReal& a, Precision digits) {
    if (!(a > 0L)) throw std::domain_error("stieltjes_a: requires a > 0");
    const std::string key =
        ConstantsTable::key_string(Family::stieltjes_a, k, a.to_string(), digits.digits());
    return table_.get_or_compute(key, [&] { return compute_stieltjes_a(k, a, digits); });
  }

  BigReal compute_stieltjes_a(unsigned k, const BigReal& a, Precision digits) {
    const BigReal eps = pow10(-static_cast<long>(digits.digits()) + 5, digits).mul_pow2(-1);
    unsigned long big_n = std::max<unsigned long>(50, 10UL * k);
    unsigned big_m = digits.digits() / 2 + 1;
    BigReal prev = em_gamma_pass(k, a, big_n, big_m, digits);
    for (int attempt = 0; attempt < 8; ++attempt) {
      const unsigned long n2 = big_n * 2;
      const unsigned m2 = big_m + 8;
      const BigReal cur = em_gamma_pass(k, a, n2, m2, digits);
      const BigReal scale = abs(cur) > 1L ? abs(cur) : BigReal::one(digits);
      if (abs(cur - prev) <= eps * scale) return cur;
      big_n = n2;
      big_m = m2;
      prev = cur;
    }
    throw std::runtime_error("stieltjes_a: Euler-Maclaurin parameters failed to stabilize");
  }

  BigReal em_gamma_pass(unsigned k, const BigReal& a_in, unsigned long big_n, unsigned big_m,
                        Precision digits) {
    // padding absorbs the cancellation between the ln^k partial sum and
    // the antiderivative term, both of size ~ ln^{k+1}(N+a)
    const double lnu_d = std::log(static_cast<double>(big_n) + std::max(a_in.to_double(), 0.0));
    const long pad = static_cast<long>(std::ceil((k + 1) * std::log10(std::max(lnu_d, 2.0)))) +
                     static_cast<long>(std::ceil(std::log10(static_cast<double>(big_n) + 2.0))) + 15;
    const Precision pw(static_cast<unsigned>(digits.digits() + pad));
    const BigReal a = a_in.to_precision(pw);

    BigReal s = BigReal::zero(pw);
    for (unsigned long n = 0; n <= big_n; ++n) {
      const BigReal u = a + static_cast<long>(n);
      const BigReal lnu = ln(u);
      s = s + (k == 0 ? BigReal::one(pw) : pow(lnu, static_cast<long>(k))) / u;
    }
    const BigReal u = a + static_cast<long>(big_n);
    const BigReal lnu = ln(u);
    const BigReal lnu_k = k == 0 ? BigReal::one(pw) : pow(lnu, static_cast<long>(k));
    s = s - pow(lnu, static_cast<long>(k + 1)) / static_cast<long>(k + 1);
    s = s - lnu_k / (u * 2L);

    // p holds P_m coefficients: p_{m,j} = (j+1) p_{m-1,j+1} - m p_{m-1,j}
    std::vector<BigReal> p(k + 1, BigReal::zero(pw));
    p[k] = BigReal::one(pw);
    BigReal upow = u;  // u^{m+1} at m = 0
    BigReal corr = BigReal::zero(pw);
    for (unsigned m = 1; m <= 2 * big_m - 1; ++m) {
      std::vector<BigReal> q(k + 1, BigReal::zero(pw));
      for (unsigned j = 0; j <= k; ++j) {
        BigReal v = -(p[j] * static_cast<long>(m));
        if (j + 1 <= k) v = v + p[j + 1] * static_cast<long>(j + 1);
        q[j] = std::move(v);
      }
      p = std::move(q);
      upow = upow * u;
      if (m % 2 == 1) {
        BigReal pval = p[k];
        for (unsigned j = k; j-- > 0;) pval = pval * lnu + p[j];
        const unsigned i = (m + 1) / 2;
        corr = corr + bernoulli_number(2 * i, pw) / factorial(2 * i, pw) * pval / upow;
      }
    }
    return (s - corr).to_precision(digits);
  }

  template <typename ComputeAll>
  std::vector<BigReal> family_batch(Family fam, unsigned K, Precision digits,
                                    const ComputeAll& compute_all) {
    std::vector<BigReal> out;
    out.reserve(K + 1);
    bool all_cached = true;
    for (unsigned j = 0; j <= K && all_cached; ++j)
      all_cached = table_.contains(ConstantsTable::key_string(fam, j, "", digits.digits()));

    if (!all_cached) {
      // compute the whole batch once; per-index cache entries come from it
      const std::string bkey = ConstantsTable::key_string(fam, K, "batch", digits.digits());
      std::shared_future<std::vector<BigReal>> batch;
      bool owner = false;
      std::promise<std::vector<BigReal>> prom;
      {
        std::lock_guard<std::mutex> lock(batch_mu_);
        auto it = batches_.find(bkey);
        if (it != batches_.end()) {
          batch = it->second;
        } else {
          batch = prom.get_future().share();
          batches_.emplace(bkey, batch);
          owner = true;
        }
      }
      if (owner) {
        try {
          const Precision pw(digits.digits() + 15);
          std::vector<BigReal> values = compute_all(pw);
          for (auto& v : values) v = v.to_precision(digits);
          prom.set_value(std::move(values));
        } catch (...) {
          {
            std::lock_guard<std::mutex> lock(batch_mu_);
            batches_.erase(bkey);
          }
          prom.set_exception(std::current_exception());
          throw;
        }
      }
      const std::vector<BigReal>& values = batch.get();
      for (unsigned j = 0; j <= K; ++j) {
        BigReal v = values[j];
        table_.get_or_compute(ConstantsTable::key_string(fam, j, "", digits.digits()),
                              [&] { return v; });
      }
    }
    for (unsigned j = 0; j <= K; ++j) {
      out.push_back(table_.get_or_compute(
          ConstantsTable::key_string(fam, j, "", digits.digits()),
          []() -> BigReal { throw std::logic_error("constants: cache entry vanished"); }));
    }
    return out;
  }

  unsigned kmax_;
  ConstantsTable table_;
  std::mutex batch_mu_;
  std::map<std::string, std::shared_future<std::vector<BigReal>>> batches_;
};

}  // namespace zetasum
