#pragma once
// Run configuration, machine-readable report documents, and their JSON and
// CSV serialization.  Reports are deterministic for a fixed config except
// for the explicitly named timing fields.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrv/hr_engine.hpp"

namespace hrv {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

struct ToleranceConfig {
  double identity = 1e-12;         // exact algebraic identities
  double verdict = 1e-9;           // Gram verdicts and residual scales
  double rank = 1e-10;             // pivot-ratio and rank thresholds
  double coercivity_slack = 1e-7;  // allowed relative slack in coercivity margins
};

struct RunConfig {
  std::uint64_t master_seed = 42;
  int n_min = 2;
  int n_max = 4;
  std::optional<int> p_filter;  // restrict to one holomorphic degree
  std::optional<int> q_filter;
  int trials = 25;
  ToleranceConfig tolerances;
  SignConvention convention = SignConvention::classical;
  std::string out_path;         // empty: no file written
  std::string format = "json";  // json | csv
  int workers = 0;              // 0: hardware concurrency
  int scan_steps = 256;
  json extra = json::object();  // subcommand payload (candidate, bodies, classes)
};

// Empty string when valid, else a description of the first problem.
std::string validate_config(const RunConfig& config);

json config_to_json(const RunConfig& config);
// Throws nlohmann::json::exception or std::invalid_argument on malformed input.
RunConfig config_from_json(const json& j);

SignConvention convention_from_string(const std::string& name);
const char* to_string(SignConvention convention);

struct TrialRecord {
  int index = 0;
  std::string instance;  // human-readable instance descriptor
  bool pass = true;
  std::vector<std::string> violations;
  json details = json::object();  // verdicts, margins, spectra extremes
  double elapsed_ms = 0.0;
};

struct ReportDocument {
  std::string schema_version = kSchemaVersion;
  std::string command;
  json config = json::object();
  std::vector<TrialRecord> trials;
  int passed = 0;
  int failed = 0;
  std::optional<double> worst_margin;  // min over trial "worst_margin" details
  json summary_extra = json::object();
  double total_ms = 0.0;
};

// Recomputes pass/fail counts, the worst margin, and total time from the
// trial records.
void finalize_report(ReportDocument& doc);

json report_to_json(const ReportDocument& doc);

// Removes every timing field (elapsed_ms, total_ms) at any depth.
json strip_timing(json j);

// Flattens trial Gram spectra into rows: trial,instance,index,eigenvalue.
std::string spectra_csv(const ReportDocument& doc);

// Writes the report to config.out_path in the configured format; no-op when
// the path is empty.
void write_report(const ReportDocument& doc, const RunConfig& config);

}  // namespace hrv
