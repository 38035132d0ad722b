#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "zetasum/constants.hpp"
#include "zetasum/sums.hpp"
#include "zetasum/version.hpp"

namespace zetasum {

inline std::optional<Prop> prop_from_name(const std::string& s) {
  if (s == "1" || s == "P1" || s == "p1") return Prop::p1;
  if (s == "2" || s == "P2" || s == "p2") return Prop::p2;
  if (s == "3" || s == "P3" || s == "p3") return Prop::p3;
  if (s == "4" || s == "P4" || s == "p4") return Prop::p4;
  if (s == "T" || s == "t" || s == "5") return Prop::t_general;
  return std::nullopt;
}

/// Verification-run configuration, as assembled from CLI flags.
struct RunConfig {
  unsigned digits = 40;
  std::string tol = "1e-20";
  unsigned kmax = 84;
  std::vector<Prop> props = {Prop::p1, Prop::p2, Prop::p3, Prop::p4, Prop::t_general};
  std::vector<unsigned> j_values = {0, 1, 2};
  std::vector<unsigned> ell_values = {0, 1, 2};
  std::vector<std::string> z_values = {"1", "2", "10"};
  std::vector<std::string> a_values = {"1", "0.5", "2"};
  std::string format = "text";
  std::string cache_path;
  std::string out_path;
  unsigned jobs = 1;

  Precision precision() const { return Precision(digits); }

  BigReal tolerance() const { return BigReal(tol, precision()); }

  void validate() const {
    if (digits < 20) throw std::invalid_argument("config: digits must be >= 20");
    const Precision p = precision();
    const BigReal t(tol, p);
    if (t < pow10(-static_cast<long>(digits) + 15, p))
      throw std::invalid_argument("config: tol must be >= 10^-(digits-15)");
    if (format != "json" && format != "csv" && format != "text")
      throw std::invalid_argument("config: format must be json, csv or text");
    if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
    for (const auto& zs : z_values) {
      const BigReal z(zs, p);
      if (abs(z) < 1L || z == -1L)
        throw std::invalid_argument("config: z values must satisfy |z| >= 1, z != -1");
    }
    for (const auto& as : a_values) {
      if (!(BigReal(as, p) > 0L)) throw std::invalid_argument("config: a values must be > 0");
    }
  }
};

struct ReportSummary {
  unsigned total = 0;
  unsigned passed = 0;
  unsigned failed = 0;
};

struct Report {
  std::string tool_version;
  RunConfig config;
  std::vector<VerificationRecord> records;
  std::vector<bool> anchor;  // parallel to records
  ReportSummary summary;
  std::vector<std::string> discrepancy_notes;
};

namespace detail {

inline bool same_case(const PropositionCase& x, const PropositionCase& y) {
  return x.prop == y.prop && x.j == y.j && x.ell == y.ell && x.z == y.z &&
         ((!x.a && !y.a) || (x.a && y.a && *x.a == *y.a));
}

}  // namespace detail

/// Expands the configured grid into cases, in canonical order (prop, j,
/// ell, z, a), then appends the three fixed regression anchors if the grid
/// does not already contain them.
inline std::pair<std::vector<PropositionCase>, std::vector<bool>> build_cases(
    const RunConfig& config) {
  const Precision p = config.precision();
  std::vector<PropositionCase> cases;

  std::vector<BigReal> zs, as;
  for (const auto& s : config.z_values) zs.emplace_back(s, p);
  for (const auto& s : config.a_values) as.emplace_back(s, p);
  std::sort(zs.begin(), zs.end());
  std::sort(as.begin(), as.end());
  std::vector<unsigned> js = config.j_values, ells = config.ell_values;
  std::sort(js.begin(), js.end());
  std::sort(ells.begin(), ells.end());

  for (Prop prop : {Prop::p1, Prop::p2, Prop::p3, Prop::p4, Prop::t_general}) {
    if (std::find(config.props.begin(), config.props.end(), prop) == config.props.end()) continue;
    for (unsigned j : js) {
      switch (prop) {
        case Prop::p1:
        case Prop::p2:
          for (const auto& z : zs) cases.emplace_back(prop, j, std::nullopt, z);
          break;
        case Prop::p3:
          for (unsigned l : ells) {
            if (l < 1) continue;
            for (const auto& z : zs)
              for (const auto& a : as) cases.emplace_back(prop, j, l, z, a);
          }
          break;
        case Prop::p4:
        case Prop::t_general:
          for (unsigned l : ells)
            for (const auto& z : zs) cases.emplace_back(prop, j, l, z);
          break;
      }
    }
  }

  std::vector<bool> anchor(cases.size(), false);
  const BigReal one = BigReal::one(p);
  const std::vector<PropositionCase> anchors = {
      PropositionCase(Prop::p1, 0, std::nullopt, one),
      PropositionCase(Prop::p2, 0, std::nullopt, one),
      PropositionCase(Prop::p4, 0, 0u, one),
  };
  for (const auto& ac : anchors) {
    bool found = false;
    for (std::size_t i = 0; i < cases.size() && !found; ++i) {
      if (detail::same_case(cases[i], ac)) {
        anchor[i] = true;
        found = true;
      }
    }
    if (!found) {
      cases.push_back(ac);
      anchor.push_back(true);
    }
  }
  return {std::move(cases), std::move(anchor)};
}

namespace detail {

inline VerificationRecord error_record(const PropositionCase& c, Precision p,
                                       const std::string& what) {
  const BigReal z = BigReal::zero(p);
  return {c, z, z, z, z, 0, 0, false, 0, what};
}

/// Open-question adjudications, stated with the computed values.
inline std::vector<std::string> discrepancy_notes(const Report& report, Constants& consts) {
  const Precision p = report.config.precision();
  std::vector<std::string> notes;
  const unsigned show = std::min(20u, report.config.digits);

  const BigReal g1 = consts.stieltjes(1, p);
  const BigReal ln2 = ln(BigReal(2L, p));
  notes.push_back("first-term check: gamma_1 * ln 2 = " + (g1 * ln2).to_string(show));

  const auto cs = consts.gamma_c_coeffs(1, p);
  const BigReal c1_half_ln2 = cs[1].mul_pow2(-1) * ln2;
  notes.push_back(
      "T-family k=1 term at j=0, z=1 evaluates to +(c_1/2) ln 2 = +" + c1_half_ln2.to_string(show) +
      "; the coefficient series reproduces the direct sum only with this positive sign (a "
      "negative k=1 term misses it by about twice that amount)");

  const auto es = consts.eta_coeffs(1, p);
  const BigReal e1ln2 = es[1] * ln2;
  notes.push_back("eta_1 = gamma^2 + 2 gamma_1 = " + es[1].to_string(show) +
                  " is positive, so eta_1 * ln 2 = +" + e1ln2.to_string(show) +
                  "; a negative value of that product is inconsistent with the directly summed "
                  "U_00(1) reported below");

  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    if (!report.anchor[i] || !r.error.empty()) continue;
    if (r.kase.prop == Prop::p4)
      notes.push_back("U_00(1) = " + r.lhs.to_string(show) + " by direct summation (sign as "
                      "computed: " + (r.lhs.sign() > 0 ? "positive)" : "negative)"));
  }

  notes.push_back(
      "the P3 bracket subtracts (-1)^ell ell! n^{ell+1} (factorial included) and "
      "(-1)^ell gamma_ell(a) with the a argument; the grid equalities hold only in that form");
  notes.push_back(
      "z = 1 corollaries are evaluated as grid points of the general coefficient series; no "
      "separate closed-form code path is used");
  return notes;
}

}  // namespace detail

/// Runs the configured grid (in parallel up to config.jobs) and assembles
/// the report in canonical case order, independent of completion order.
inline Report run_verification(const RunConfig& config, Constants& consts) {
  config.validate();
  const Precision p = config.precision();
  const BigReal tol = config.tolerance();

  auto [cases, anchor] = build_cases(config);
  std::vector<std::optional<VerificationRecord>> slots(cases.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cases.size()) return;
      try {
        slots[i] = verify(cases[i], tol, p, consts);
      } catch (const std::exception& e) {
        slots[i] = detail::error_record(cases[i], p, e.what());
      }
    }
  };
  const unsigned nthreads = std::min<unsigned>(config.jobs, static_cast<unsigned>(cases.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Report report;
  report.tool_version = version_string;
  report.config = config;
  report.anchor = std::move(anchor);
  for (auto& s : slots) report.records.push_back(std::move(*s));
  for (const auto& r : report.records) {
    ++report.summary.total;
    if (r.pass) ++report.summary.passed;
    else ++report.summary.failed;
  }
  report.discrepancy_notes = detail::discrepancy_notes(report, consts);
  return report;
}

inline nlohmann::ordered_json record_to_json(const VerificationRecord& r, bool anchor) {
  nlohmann::ordered_json jr;
  jr["prop"] = prop_name(r.kase.prop);
  jr["j"] = r.kase.j;
  if (r.kase.ell) jr["ell"] = *r.kase.ell;
  else jr["ell"] = nullptr;
  jr["z"] = r.kase.z.to_string();
  if (r.kase.a) jr["a"] = r.kase.a->to_string();
  else jr["a"] = nullptr;
  jr["lhs"] = r.lhs.to_string();
  jr["rhs"] = r.rhs.to_string();
  jr["abs_diff"] = r.abs_diff.to_string();
  jr["rel_diff"] = r.rel_diff.to_string();
  jr["lhs_terms"] = r.lhs_terms;
  jr["rhs_terms"] = r.rhs_terms;
  jr["pass"] = r.pass;
  jr["wall_ms"] = r.wall_ms;
  if (anchor) jr["anchor"] = true;
  if (!r.error.empty()) jr["error"] = r.error;
  return jr;
}

inline std::string report_to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["tool"] = {{"name", "zetasum"}, {"version", report.tool_version}};
  nlohmann::ordered_json cfg;
  cfg["digits"] = report.config.digits;
  cfg["tol"] = report.config.tol;
  cfg["kmax"] = report.config.kmax;
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (Prop pr : report.config.props) props.push_back(prop_name(pr));
  cfg["props"] = props;
  cfg["j"] = report.config.j_values;
  cfg["ell"] = report.config.ell_values;
  cfg["z"] = report.config.z_values;
  cfg["a"] = report.config.a_values;
  cfg["jobs"] = report.config.jobs;
  j["config"] = cfg;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.records.size(); ++i)
    records.push_back(record_to_json(report.records[i], report.anchor[i]));
  j["records"] = records;
  j["summary"] = {{"total", report.summary.total},
                  {"passed", report.summary.passed},
                  {"failed", report.summary.failed}};
  j["discrepancy_notes"] = report.discrepancy_notes;
  return j.dump(1) + "\n";
}

inline std::string report_to_csv(const Report& report) {
  std::ostringstream os;
  os << "prop,j,ell,z,a,lhs,rhs,abs_diff,rel_diff,lhs_terms,rhs_terms,pass,wall_ms,error\n";
  for (const auto& r : report.records) {
    os << prop_name(r.kase.prop) << ',' << r.kase.j << ',';
    if (r.kase.ell) os << *r.kase.ell;
    os << ',' << r.kase.z.to_string() << ',';
    if (r.kase.a) os << r.kase.a->to_string();
    os << ',' << r.lhs.to_string() << ',' << r.rhs.to_string() << ',' << r.abs_diff.to_string()
       << ',' << r.rel_diff.to_string() << ',' << r.lhs_terms << ',' << r.rhs_terms << ','
       << (r.pass ? "true" : "false") << ',' << r.wall_ms << ',' << r.error << '\n';
  }
  os << "# summary total=" << report.summary.total << " passed=" << report.summary.passed
     << " failed=" << report.summary.failed << '\n';
  for (const auto& n : report.discrepancy_notes) os << "# note: " << n << '\n';
  return os.str();
}

inline std::string report_to_text(const Report& report) {
  std::ostringstream os;
  for (const auto& r : report.records) {
    os << (r.pass ? "PASS " : "FAIL ") << prop_name(r.kase.prop) << " j=" << r.kase.j;
    if (r.kase.ell) os << " ell=" << *r.kase.ell;
    os << " z=" << r.kase.z.to_string(6);
    if (r.kase.a) os << " a=" << r.kase.a->to_string(6);
    if (!r.error.empty()) {
      os << "  error: " << r.error << '\n';
      continue;
    }
    os << "\n      lhs = " << r.lhs.to_string() << "  (" << r.lhs_terms << " terms)"
       << "\n      rhs = " << r.rhs.to_string() << "  (" << r.rhs_terms << " terms)"
       << "\n      |diff| = " << r.abs_diff.to_string(3) << "  rel = " << r.rel_diff.to_string(3)
       << "  [" << r.wall_ms << " ms]\n";
  }
  os << "summary: total=" << report.summary.total << " passed=" << report.summary.passed
     << " failed=" << report.summary.failed << '\n';
  for (const auto& n : report.discrepancy_notes) os << "note: " << n << '\n';
  return os.str();
}

inline std::string report_to(const Report& report, const std::string& format) {
  if (format == "json") return report_to_json(report);
  if (format == "csv") return report_to_csv(report);
  return report_to_text(report);
}

}  // namespace zetasum
