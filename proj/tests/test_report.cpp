#include <doctest.h>

#include <stdexcept>

#include "hrv/report.hpp"

using hrv::RunConfig;

TEST_CASE("config validation catches each malformed field") {
  RunConfig config;
  CHECK(hrv::validate_config(config).empty());
  RunConfig bad = config;
  bad.trials = 0;
  CHECK_FALSE(hrv::validate_config(bad).empty());
  bad = config;
  bad.n_min = 5;
  bad.n_max = 3;
  CHECK_FALSE(hrv::validate_config(bad).empty());
  bad = config;
  bad.n_max = 9;
  CHECK_FALSE(hrv::validate_config(bad).empty());
  bad = config;
  bad.tolerances.verdict = 0.0;
  CHECK_FALSE(hrv::validate_config(bad).empty());
  bad = config;
  bad.format = "xml";
  CHECK_FALSE(hrv::validate_config(bad).empty());
  bad = config;
  bad.workers = -1;
  CHECK_FALSE(hrv::validate_config(bad).empty());
  bad = config;
  bad.scan_steps = 4;
  CHECK_FALSE(hrv::validate_config(bad).empty());
}

TEST_CASE("config serialization round trips every field") {
  RunConfig config;
  config.master_seed = 777;
  config.n_min = 3;
  config.n_max = 5;
  config.p_filter = 1;
  config.q_filter = 2;
  config.trials = 7;
  config.tolerances.identity = 1e-11;
  config.tolerances.coercivity_slack = 2e-7;
  config.convention = hrv::SignConvention::paper_printed;
  config.out_path = "report.json";
  config.format = "csv";
  config.workers = 2;
  config.scan_steps = 64;
  config.extra = {{"note", "x"}};
  const RunConfig back = hrv::config_from_json(hrv::config_to_json(config));
  CHECK(back.master_seed == 777);
  CHECK(back.n_min == 3);
  CHECK(back.n_max == 5);
  CHECK(back.p_filter.value() == 1);
  CHECK(back.q_filter.value() == 2);
  CHECK(back.trials == 7);
  CHECK(back.tolerances.identity == 1e-11);
  CHECK(back.tolerances.coercivity_slack == 2e-7);
  CHECK(back.convention == hrv::SignConvention::paper_printed);
  CHECK(back.out_path == "report.json");
  CHECK(back.format == "csv");
  CHECK(back.workers == 2);
  CHECK(back.scan_steps == 64);
  CHECK(back.extra.at("note") == "x");
  RunConfig plain;
  const RunConfig plain_back = hrv::config_from_json(hrv::config_to_json(plain));
  CHECK_FALSE(plain_back.p_filter.has_value());
  CHECK_FALSE(plain_back.q_filter.has_value());
}

TEST_CASE("convention names") {
  CHECK(hrv::convention_from_string("classical") == hrv::SignConvention::classical);
  CHECK(hrv::convention_from_string("paper") == hrv::SignConvention::paper_printed);
  CHECK_THROWS_AS(hrv::convention_from_string("other"), std::invalid_argument);
  CHECK(std::string(hrv::to_string(hrv::SignConvention::classical)) == "classical");
}

TEST_CASE("report finalization recomputes counts and the worst margin") {
  hrv::ReportDocument doc;
  doc.command = "verify";
  hrv::TrialRecord good;
  good.index = 0;
  good.pass = true;
  good.details["worst_margin"] = -1e-9;
  good.elapsed_ms = 2.0;
  hrv::TrialRecord bad;
  bad.index = 1;
  bad.pass = false;
  bad.violations.push_back("sign violation");
  bad.details["worst_margin"] = -0.25;
  bad.elapsed_ms = 3.0;
  doc.trials = {good, bad};
  hrv::finalize_report(doc);
  CHECK(doc.passed == 1);
  CHECK(doc.failed == 1);
  REQUIRE(doc.worst_margin.has_value());
  CHECK(*doc.worst_margin == -0.25);
  const auto j = hrv::report_to_json(doc);
  CHECK(j.at("schema_version") == hrv::kSchemaVersion);
  CHECK(j.at("summary").at("passed") == 1);
  CHECK(j.at("summary").at("failed") == 1);
  CHECK(j.at("summary").at("worst_margin") == -0.25);
  CHECK(j.at("trials").size() == 2);
  CHECK(j.at("trials")[1].at("violations")[0] == "sign violation");
}

TEST_CASE("strip_timing removes timing fields at every depth") {
  hrv::json j = {
      {"total_ms", 12.0},
      {"trials", {{{"elapsed_ms", 1.0}, {"pass", true}},
                  {{"elapsed_ms", 2.0}, {"details", {{"elapsed_ms", 3.0}, {"x", 1}}}}}},
  };
  const auto stripped = hrv::strip_timing(j);
  CHECK_FALSE(stripped.contains("total_ms"));
  CHECK_FALSE(stripped.at("trials")[0].contains("elapsed_ms"));
  CHECK_FALSE(stripped.at("trials")[1].at("details").contains("elapsed_ms"));
  CHECK(stripped.at("trials")[1].at("details").at("x") == 1);
  CHECK(stripped.at("trials")[0].at("pass") == true);
}

TEST_CASE("spectra rows flatten per-trial eigenvalues") {
  hrv::ReportDocument doc;
  hrv::TrialRecord t;
  t.index = 0;
  t.instance = "n=2 p=1 q=1";
  t.details["spectrum"] = {0.5, 2.0};
  doc.trials = {t};
  const std::string csv = hrv::spectra_csv(doc);
  CHECK(csv.find("trial,instance,eigenvalue_index,eigenvalue") != std::string::npos);
  CHECK(csv.find("0,\"n=2 p=1 q=1\",0,0.5") != std::string::npos);
  CHECK(csv.find("0,\"n=2 p=1 q=1\",1,2") != std::string::npos);
}
