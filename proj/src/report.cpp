#include "hrv/report.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hrv {

std::string validate_config(const RunConfig& config) {
  if (config.trials < 1) return "trials must be at least 1";
  if (config.n_min < 1 || config.n_max > kMaxAmbientDimension || config.n_min > config.n_max)
    return "n range must lie within 1..8 with min <= max";
  if (config.p_filter && *config.p_filter < 0) return "p filter must be nonnegative";
  if (config.q_filter && *config.q_filter < 0) return "q filter must be nonnegative";
  const ToleranceConfig& tol = config.tolerances;
  if (!(tol.identity > 0.0) || !(tol.verdict > 0.0) || !(tol.rank > 0.0) ||
      !(tol.coercivity_slack > 0.0))
    return "tolerances must be positive";
  if (config.format != "json" && config.format != "csv") return "format must be json or csv";
  if (config.workers < 0) return "workers must be nonnegative";
  if (config.scan_steps < 16) return "scan steps must be at least 16";
  return "";
}

SignConvention convention_from_string(const std::string& name) {
  if (name == "classical") return SignConvention::classical;
  if (name == "paper") return SignConvention::paper_printed;
  throw std::invalid_argument("unknown sign convention: " + name);
}

const char* to_string(SignConvention convention) {
  return convention == SignConvention::classical ? "classical" : "paper";
}

json config_to_json(const RunConfig& config) {
  json j;
  j["master_seed"] = config.master_seed;
  j["n_min"] = config.n_min;
  j["n_max"] = config.n_max;
  if (config.p_filter) j["p"] = *config.p_filter;
  if (config.q_filter) j["q"] = *config.q_filter;
  j["trials"] = config.trials;
  j["tolerances"] = {{"identity", config.tolerances.identity},
                     {"verdict", config.tolerances.verdict},
                     {"rank", config.tolerances.rank},
                     {"coercivity_slack", config.tolerances.coercivity_slack}};
  j["sign_convention"] = to_string(config.convention);
  j["out"] = config.out_path;
  j["format"] = config.format;
  j["workers"] = config.workers;
  j["scan_steps"] = config.scan_steps;
  if (!config.extra.empty()) j["extra"] = config.extra;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig config;
  if (j.contains("master_seed")) config.master_seed = j.at("master_seed").get<std::uint64_t>();
  if (j.contains("n_min")) config.n_min = j.at("n_min").get<int>();
  if (j.contains("n_max")) config.n_max = j.at("n_max").get<int>();
  if (j.contains("p")) config.p_filter = j.at("p").get<int>();
  if (j.contains("q")) config.q_filter = j.at("q").get<int>();
  if (j.contains("trials")) config.trials = j.at("trials").get<int>();
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (t.contains("identity")) config.tolerances.identity = t.at("identity").get<double>();
    if (t.contains("verdict")) config.tolerances.verdict = t.at("verdict").get<double>();
    if (t.contains("rank")) config.tolerances.rank = t.at("rank").get<double>();
    if (t.contains("coercivity_slack"))
      config.tolerances.coercivity_slack = t.at("coercivity_slack").get<double>();
  }
  if (j.contains("sign_convention"))
    config.convention = convention_from_string(j.at("sign_convention").get<std::string>());
  if (j.contains("out")) config.out_path = j.at("out").get<std::string>();
  if (j.contains("format")) config.format = j.at("format").get<std::string>();
  if (j.contains("workers")) config.workers = j.at("workers").get<int>();
  if (j.contains("scan_steps")) config.scan_steps = j.at("scan_steps").get<int>();
  if (j.contains("extra")) config.extra = j.at("extra");
  return config;
}

void finalize_report(ReportDocument& doc) {
  doc.passed = 0;
  doc.failed = 0;
  doc.worst_margin.reset();
  doc.total_ms = 0.0;
  for (const TrialRecord& trial : doc.trials) {
    (trial.pass ? doc.passed : doc.failed)++;
    doc.total_ms += trial.elapsed_ms;
    if (trial.details.contains("worst_margin")) {
      const double m = trial.details.at("worst_margin").get<double>();
      if (!doc.worst_margin || m < *doc.worst_margin) doc.worst_margin = m;
    }
  }
}

json report_to_json(const ReportDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["command"] = doc.command;
  j["config"] = doc.config;
  json trials = json::array();
  for (const TrialRecord& trial : doc.trials) {
    json t;
    t["index"] = trial.index;
    t["instance"] = trial.instance;
    t["pass"] = trial.pass;
    t["violations"] = trial.violations;
    t["details"] = trial.details;
    t["elapsed_ms"] = trial.elapsed_ms;
    trials.push_back(std::move(t));
  }
  j["trials"] = std::move(trials);
  json summary;
  summary["passed"] = doc.passed;
  summary["failed"] = doc.failed;
  if (doc.worst_margin) summary["worst_margin"] = *doc.worst_margin;
  if (!doc.summary_extra.empty()) summary["extra"] = doc.summary_extra;
  summary["total_ms"] = doc.total_ms;
  j["summary"] = std::move(summary);
  return j;
}

json strip_timing(json j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    j.erase("total_ms");
    for (auto& [key, value] : j.items()) value = strip_timing(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_timing(value);
  }
  return j;
}

std::string spectra_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "trial,instance,eigenvalue_index,eigenvalue\n";
  out.precision(17);
  for (const TrialRecord& trial : doc.trials) {
    if (!trial.details.contains("spectrum")) continue;
    const json& spectrum = trial.details.at("spectrum");
    int i = 0;
    for (const auto& v : spectrum)
      out << trial.index << ",\"" << trial.instance << "\"," << i++ << "," << v.get<double>()
          << "\n";
  }
  return out.str();
}

void write_report(const ReportDocument& doc, const RunConfig& config) {
  if (config.out_path.empty()) return;
  std::ofstream out(config.out_path);
  if (!out) throw std::runtime_error("cannot open output path: " + config.out_path);
  if (config.format == "csv") {
    out << spectra_csv(doc);
  } else {
    out << report_to_json(doc).dump(2) << "\n";
  }
}

}  // namespace hrv
