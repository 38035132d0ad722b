// zetasum command-line interface: coefficient-family tables, single
// evaluator calls, and the proposition verification grid with
// machine-readable reports.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetasum/constants.hpp"
#include "zetasum/report.hpp"
#include "zetasum/special.hpp"
#include "zetasum/sums.hpp"
#include "zetasum/version.hpp"

namespace {

unsigned default_digits_from_env() {
  if (const char* env = std::getenv("ZETASUM_DIGITS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 20 && v <= 100000) return static_cast<unsigned>(v);
  }
  return 40;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  out << text;
}

struct ConstantsCmd {
  std::string family;
  unsigned kmax = 10;
  std::string a = "1";
  unsigned digits = 40;
  std::string format = "text";
  std::string cache;
};

int run_constants(const ConstantsCmd& opt) {
  const zetasum::Precision p(opt.digits);
  zetasum::Constants consts(std::max(60u, opt.kmax));
  if (!opt.cache.empty() && std::filesystem::exists(opt.cache)) consts.load_cache(opt.cache);

  std::vector<zetasum::BigReal> values;
  if (opt.family == "stieltjes") {
    for (unsigned k = 0; k <= opt.kmax; ++k) values.push_back(consts.stieltjes(k, p));
  } else if (opt.family == "stieltjes-a") {
    const zetasum::BigReal a(opt.a, p);
    for (unsigned k = 0; k <= opt.kmax; ++k) values.push_back(consts.stieltjes_a(k, a, p));
  } else if (opt.family == "gamma-c") {
    values = consts.gamma_c_coeffs(opt.kmax, p);
  } else if (opt.family == "eta") {
    values = consts.eta_coeffs(opt.kmax, p);
  } else {
    std::cerr << "unknown family '" << opt.family
              << "' (expected stieltjes, stieltjes-a, gamma-c or eta)\n";
    return 2;
  }

  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["family"] = opt.family;
    j["digits"] = opt.digits;
    if (opt.family == "stieltjes-a") j["a"] = opt.a;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (unsigned k = 0; k < values.size(); ++k)
      rows.push_back({{"k", k}, {"value", values[k].to_string()}});
    j["values"] = rows;
    std::cout << j.dump(1) << '\n';
  } else if (opt.format == "csv") {
    std::cout << "k,value\n";
    for (unsigned k = 0; k < values.size(); ++k) std::cout << k << ',' << values[k].to_string() << '\n';
  } else {
    for (unsigned k = 0; k < values.size(); ++k)
      std::cout << k << '\t' << values[k].to_string() << '\n';
  }
  if (!opt.cache.empty() && consts.table().dirty()) consts.save_cache(opt.cache);
  return 0;
}

struct EvalCmd {
  std::string fn;
  unsigned m = 1;
  std::string z = "0.5";
  std::string s = "2";
  std::string a = "1";
  std::string x = "1";
  std::string eps = "0.001";
  unsigned ell = 0;
  unsigned digits = 40;
};

int run_eval(const EvalCmd& opt) {
  const zetasum::Precision p(opt.digits);
  zetasum::BigReal result = zetasum::BigReal::zero(p);
  if (opt.fn == "li") {
    result = zetasum::polylog_int(opt.m, zetasum::BigReal(opt.z, p), p);
  } else if (opt.fn == "hurwitz") {
    const auto ht =
        zetasum::hurwitz_taylor(zetasum::BigReal(opt.s, p), zetasum::BigReal(opt.a, p), opt.ell, p);
    result = zetasum::factorial(opt.ell, p) * ht.series.coeff(opt.ell);
  } else if (opt.fn == "gamma") {
    const auto gt = zetasum::gamma_taylor(zetasum::BigReal(opt.x, p), opt.ell, p);
    result = zetasum::factorial(opt.ell, p) * gt.series.coeff(opt.ell);
  } else if (opt.fn == "digamma") {
    result = zetasum::digamma(zetasum::BigReal(opt.x, p), p);
  } else if (opt.fn == "polygamma") {
    result = opt.ell == 0 ? zetasum::digamma(zetasum::BigReal(opt.x, p), p)
                          : zetasum::polygamma(opt.ell, zetasum::BigReal(opt.x, p), p);
  } else if (opt.fn == "zeta-logderiv") {
    result = zetasum::zeta_logderiv(opt.ell, zetasum::BigReal(opt.s, p), p);
  } else if (opt.fn == "alt-zeta-probe") {
    result = zetasum::alt_zeta_limit_probe(zetasum::BigReal(opt.eps, p), p);
  } else {
    std::cerr << "unknown fn '" << opt.fn
              << "' (expected li, hurwitz, gamma, digamma, polygamma, zeta-logderiv, "
                 "alt-zeta-probe)\n";
    return 2;
  }
  std::cout << result.to_string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"high-precision Stieltjes-type coefficient families and alternating "
               "zeta/Gamma series identity checks"};
  app.set_version_flag("--version", zetasum::version_string);
  app.require_subcommand(1);

  const unsigned env_digits = default_digits_from_env();

  ConstantsCmd copt;
  copt.digits = env_digits;
  auto* c = app.add_subcommand("constants", "print a coefficient family table");
  c->add_option("--family", copt.family, "stieltjes | stieltjes-a | gamma-c | eta")->required();
  c->add_option("--kmax", copt.kmax, "largest index to print");
  c->add_option("--a", copt.a, "Hurwitz parameter (stieltjes-a only)");
  c->add_option("--digits", copt.digits, "decimal working precision");
  c->add_option("--format", copt.format, "text | csv | json");
  c->add_option("--cache", copt.cache, "constants cache file (loaded/saved)");

  zetasum::RunConfig vopt;
  vopt.digits = env_digits;
  std::vector<std::string> prop_names = {"1", "2", "3", "4", "T"};
  auto* v = app.add_subcommand("verify", "verify the identity grid (both sides, independent paths)");
  v->add_option("--digits", vopt.digits, "decimal working precision");
  v->add_option("--tol", vopt.tol, "pass tolerance (>= 10^-(digits-15))");
  v->add_option("--kmax", vopt.kmax, "coefficient-series index cap");
  v->add_option("--props", prop_names, "subset of 1 2 3 4 T");
  v->add_option("--j", vopt.j_values, "j grid");
  v->add_option("--ell", vopt.ell_values, "derivative-order grid");
  v->add_option("--z", vopt.z_values, "z grid (|z| >= 1, z != -1)");
  v->add_option("--a", vopt.a_values, "Hurwitz parameters for P3 (> 0)");
  v->add_option("--format", vopt.format, "text | csv | json");
  v->add_option("--out", vopt.out_path, "write the report to this path instead of stdout");
  v->add_option("--cache", vopt.cache_path, "constants cache file (loaded/saved)");
  v->add_option("--jobs", vopt.jobs, "parallel verification width");

  EvalCmd eopt;
  eopt.digits = env_digits;
  auto* e = app.add_subcommand("eval", "evaluate one special function");
  e->add_option("--fn", eopt.fn, "li | hurwitz | gamma | digamma | polygamma | zeta-logderiv | alt-zeta-probe")
      ->required();
  e->add_option("--m", eopt.m, "polylogarithm order (li)");
  e->add_option("--z", eopt.z, "polylogarithm argument (li)");
  e->add_option("--s", eopt.s, "s argument (hurwitz, zeta-logderiv)");
  e->add_option("--a", eopt.a, "Hurwitz parameter (hurwitz)");
  e->add_option("--x", eopt.x, "x argument (gamma, digamma, polygamma)");
  e->add_option("--eps", eopt.eps, "offset (alt-zeta-probe)");
  e->add_option("--ell", eopt.ell, "derivative order where applicable");
  e->add_option("--digits", eopt.digits, "decimal working precision");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c)) return run_constants(copt);
    if (app.got_subcommand(e)) return run_eval(eopt);

    // verify
    vopt.props.clear();
    for (const auto& name : prop_names) {
      const auto pr = zetasum::prop_from_name(name);
      if (!pr) {
        std::cerr << "unknown proposition '" << name << "'\n";
        return 2;
      }
      if (std::find(vopt.props.begin(), vopt.props.end(), *pr) == vopt.props.end())
        vopt.props.push_back(*pr);
    }
    vopt.validate();
    zetasum::Constants consts(vopt.kmax);
    if (!vopt.cache_path.empty() && std::filesystem::exists(vopt.cache_path))
      consts.load_cache(vopt.cache_path);
    const zetasum::Report report = zetasum::run_verification(vopt, consts);
    write_output(zetasum::report_to(report, vopt.format), vopt.out_path);
    if (!vopt.cache_path.empty() && consts.table().dirty()) consts.save_cache(vopt.cache_path);
    return report.summary.failed == 0 ? 0 : 1;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
