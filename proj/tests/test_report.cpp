#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "whakit/fixtures.hpp"
#include "whakit/io.hpp"
#include "whakit/report.hpp"

using namespace whakit;

namespace {

std::string status(const AnalysisReport& r, const std::string& stage) {
  const StageResult* s = r.stage(stage);
  return s ? s->status : "missing";
}

}  // namespace

TEST_CASE("analysis of C[Z_3]") {
  const AnalysisReport r = analyze(to_file(make_fixture("cyclic", 3)));
  CHECK(r.exit_code() == 0);
  REQUIRE(r.delta);
  CHECK(*r.delta == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE(r.haar);
  REQUIRE(r.haar->index);
  CHECK(*r.haar->index == doctest::Approx(3.0).epsilon(1e-12));
  REQUIRE(r.counital);
  CHECK(r.counital->weak_kac);
  CHECK(r.sectors.size() == 3);
  // Characters of Z_3 multiply like Z_3.
  CHECK(r.fusion[1][1] == std::vector<int>{0, 0, 1});
  CHECK(r.fusion[1][2] == std::vector<int>{1, 0, 0});
}

TEST_CASE("analysis of Sweedler's algebra stops at the Haar stage") {
  const AnalysisReport r = analyze(to_file(sweedler_h4()));
  CHECK(r.exit_code() == 0);
  CHECK(r.valid);
  REQUIRE(r.semisimple);
  CHECK_FALSE(*r.semisimple);
  CHECK(status(r, "haar") == "absent");
  CHECK(status(r, "sectors") == "skipped");
  CHECK_FALSE(r.haar);
}

TEST_CASE("analysis of a perturbed file names the broken axioms") {
  const WhaFile bad = perturb(to_file(make_fixture("pair-groupoid", 2)), 5, 1e-3, PerturbTarget::Comultiplication);
  const AnalysisReport r = analyze(bad);
  CHECK(r.exit_code() == 2);
  CHECK_FALSE(r.valid);
  CHECK(status(r, "antipode") == "skipped");
  bool named = false;
  for (const AxiomResidual& a : r.axioms) named = named || !a.passed;
  CHECK(named);
}

TEST_CASE("analysis of a decomposable algebra marks the Markov stage absent") {
  const AnalysisReport r = analyze(to_file(make_fixture("groupoid-union", 2)));
  CHECK(r.exit_code() == 0);
  CHECK(status(r, "markov") == "absent");
  REQUIRE(r.counital);
  CHECK(r.counital->dim_hypercenter == 2);
}

TEST_CASE("reports are deterministic") {
  const WhaFile f = to_file(make_fixture("s3"));
  CHECK(report_json(analyze(f), false) == report_json(analyze(f), false));
}

TEST_CASE("JSON report carries its schema and the analysis values") {
  const auto j = nlohmann::json::parse(report_json(analyze(to_file(make_fixture("pair-groupoid", 3)))));
  CHECK(j["schema"] == "whakit-analysis");
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["dim"] == 9);
  CHECK(j["counital"]["dim_left"] == 3);
  CHECK(std::abs(j["delta"].get<double>() - 3.0) < 1e-9);
  CHECK(j.contains("timing_seconds"));
  CHECK(j["stages"].size() == 8);
}

TEST_CASE("text report lists every stage") {
  const std::string text = report_text(analyze(to_file(make_fixture("cyclic", 2))));
  for (const char* stage : {"validate", "antipode", "counital", "star", "semisimplicity", "haar", "sectors", "markov"})
    CHECK(text.find(stage) != std::string::npos);
  CHECK(text.find("delta: 2") != std::string::npos);
}
