#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "test_util.hpp"
#include "zetasum/report.hpp"

using zetasum::Constants;
using zetasum::Prop;
using zetasum::RunConfig;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.digits = 30;
  cfg.tol = "1e-13";
  cfg.props = {Prop::p1};
  cfg.j_values = {0};
  cfg.ell_values = {0};
  cfg.z_values = {"2"};
  cfg.a_values = {"1"};
  cfg.jobs = 2;
  return cfg;
}

nlohmann::json scrub_volatile(nlohmann::json j) {
  for (auto& rec : j.at("records")) rec.erase("wall_ms");
  return j;
}

}  // namespace

TEST_CASE("config validation") {
  RunConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());

  RunConfig bad = cfg;
  bad.tol = "1e-30";  // below 10^-(digits-15)
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.format = "xml";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.z_values = {"-1"};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.a_values = {"0"};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.jobs = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("grid expansion is canonical and carries the three anchors") {
  RunConfig cfg;  // defaults
  auto [cases, anchor] = zetasum::build_cases(cfg);

  // default grid: P1 9 + P2 9 + P3 2*9*3 + P4 27 + T 27 = 126, anchors inside
  CHECK(cases.size() == 126);
  CHECK(std::count(anchor.begin(), anchor.end(), true) == 3);

  // narrowed grid still appends the missing anchors
  RunConfig narrow = small_config();
  auto [ncases, nanchor] = zetasum::build_cases(narrow);
  CHECK(ncases.size() == 4);  // P1 j0 z2 + three anchors
  CHECK(std::count(nanchor.begin(), nanchor.end(), true) == 3);
  CHECK(ncases[0].prop == Prop::p1);
  CHECK(ncases[0].z == 2L);

  // canonical order: P1 before P2, j ascending, z ascending
  RunConfig two = small_config();
  two.props = {Prop::p2, Prop::p1};
  two.j_values = {1, 0};
  two.z_values = {"4", "2"};
  auto [tcases, tanchor] = zetasum::build_cases(two);
  REQUIRE(tcases.size() >= 8);
  CHECK(tcases[0].prop == Prop::p1);
  CHECK(tcases[0].j == 0);
  CHECK(tcases[0].z == 2L);
  CHECK(tcases[1].z == 4L);
  CHECK(tcases[2].j == 1);
}

TEST_CASE("verification report") {
  RunConfig cfg = small_config();
  Constants consts(cfg.kmax);
  const zetasum::Report report = zetasum::run_verification(cfg, consts);

  SECTION("summary and exit-code invariant") {
    CHECK(report.summary.total == report.records.size());
    CHECK(report.summary.passed + report.summary.failed == report.summary.total);
    bool all_pass = true;
    for (const auto& r : report.records) all_pass = all_pass && r.pass;
    CHECK((report.summary.failed == 0) == all_pass);
    CHECK(report.summary.failed == 0);
  }

  SECTION("json schema keys present in every record") {
    const auto j = nlohmann::json::parse(zetasum::report_to_json(report));
    CHECK(j.at("tool").at("name") == "zetasum");
    CHECK(j.at("summary").at("failed") == 0);
    for (const auto& rec : j.at("records")) {
      for (const char* key : {"prop", "j", "ell", "z", "a", "lhs", "rhs", "abs_diff", "rel_diff",
                              "lhs_terms", "rhs_terms", "pass", "wall_ms"}) {
        INFO("key = " << key);
        CHECK(rec.contains(key));
      }
    }
    CHECK(j.at("discrepancy_notes").size() >= 4);
  }

  SECTION("byte-identical reruns apart from wall_ms") {
    Constants consts2(cfg.kmax);
    const zetasum::Report rerun = zetasum::run_verification(cfg, consts2);
    const auto a = scrub_volatile(nlohmann::json::parse(zetasum::report_to_json(report)));
    const auto b = scrub_volatile(nlohmann::json::parse(zetasum::report_to_json(rerun)));
    CHECK(a.dump() == b.dump());
  }

  SECTION("csv and text formats") {
    const std::string csv = zetasum::report_to_csv(report);
    CHECK(csv.rfind("prop,j,ell,z,a,lhs,rhs,", 0) == 0);
    const std::string text = zetasum::report_to_text(report);
    CHECK(text.find("PASS") != std::string::npos);
    CHECK(text.find("summary:") != std::string::npos);
  }
}

TEST_CASE("evaluator failures are recorded per case and the run continues") {
  RunConfig cfg = small_config();
  cfg.kmax = 12;  // too small for the Gamma-family coefficient series
  cfg.props = {Prop::p2};
  Constants consts(cfg.kmax);
  const zetasum::Report report = zetasum::run_verification(cfg, consts);
  CHECK(report.summary.failed > 0);
  bool saw_error = false;
  for (const auto& r : report.records) saw_error = saw_error || !r.error.empty();
  CHECK(saw_error);
}
