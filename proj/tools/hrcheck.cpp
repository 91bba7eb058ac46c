// hrcheck: seeded verification campaigns for the mixed bilinear-form
// machinery and its convex-geometry mirror.  Subcommands: verify,
// probe-cone, mixed-volume, decompose.  Exit codes: 0 all properties hold,
// 1 at least one violation, 2 config or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrv/campaign.hpp"

namespace {

struct CommonOpts {
  CLI::Option *config = nullptr, *seed = nullptr, *n = nullptr, *p = nullptr, *q = nullptr,
              *trials = nullptr, *tolerance = nullptr, *convention = nullptr, *out = nullptr,
              *format = nullptr, *workers = nullptr, *steps = nullptr;
  std::string config_path, n_text, convention_text, out_path, format_text;
  std::uint64_t seed_value = 0;
  int p_value = 0, q_value = 0, trials_value = 0, workers_value = 0, steps_value = 0;
  double tolerance_value = 0.0;
};

void add_common_options(CLI::App* cmd, CommonOpts& o) {
  o.config = cmd->add_option("--config", o.config_path, "JSON config file; flags override it");
  o.seed = cmd->add_option("--seed", o.seed_value, "master seed for all trial randomness");
  o.n = cmd->add_option("--n", o.n_text, "ambient dimension, a single value or a range A..B");
  o.p = cmd->add_option("--p", o.p_value, "restrict to holomorphic degree p");
  o.q = cmd->add_option("--q", o.q_value, "restrict to antiholomorphic degree q");
  o.trials = cmd->add_option("--trials", o.trials_value, "trials per instance");
  o.tolerance = cmd->add_option("--tolerance", o.tolerance_value, "verdict/residual tolerance");
  o.convention = cmd->add_option("--sign-convention", o.convention_text, "classical or paper")
                     ->check(CLI::IsMember({"classical", "paper"}));
  o.out = cmd->add_option("--out", o.out_path, "report output path");
  o.format = cmd->add_option("--format", o.format_text, "report format")
                 ->check(CLI::IsMember({"json", "csv"}));
  o.workers = cmd->add_option("--workers", o.workers_value, "worker threads (0 = hardware)");
  o.steps = cmd->add_option("--steps", o.steps_value, "path scan grid steps");
}

bool parse_n_range(const std::string& text, hrv::RunConfig& config) {
  try {
    const size_t dots = text.find("..");
    if (dots == std::string::npos) {
      config.n_min = config.n_max = std::stoi(text);
    } else {
      config.n_min = std::stoi(text.substr(0, dots));
      config.n_max = std::stoi(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

int run_command(const std::string& name, const CommonOpts& o) {
  hrv::RunConfig config;
  if (o.config->count() > 0) {
    std::ifstream in(o.config_path);
    if (!in) {
      std::cerr << "cannot open config file: " << o.config_path << "\n";
      return 2;
    }
    try {
      config = hrv::config_from_json(hrv::json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << "bad config file: " << e.what() << "\n";
      return 2;
    }
  }
  if (o.seed->count() > 0) config.master_seed = o.seed_value;
  if (o.n->count() > 0 && !parse_n_range(o.n_text, config)) {
    std::cerr << "bad --n value: " << o.n_text << " (expected A or A..B)\n";
    return 2;
  }
  if (o.p->count() > 0) config.p_filter = o.p_value;
  if (o.q->count() > 0) config.q_filter = o.q_value;
  if (o.trials->count() > 0) config.trials = o.trials_value;
  if (o.tolerance->count() > 0) config.tolerances.verdict = o.tolerance_value;
  if (o.convention->count() > 0) config.convention = hrv::convention_from_string(o.convention_text);
  if (o.out->count() > 0) config.out_path = o.out_path;
  if (o.format->count() > 0) config.format = o.format_text;
  if (o.workers->count() > 0) config.workers = o.workers_value;
  if (o.steps->count() > 0) config.scan_steps = o.steps_value;

  hrv::CommandResult result;
  if (name == "verify") {
    result = hrv::cmd_verify(config);
  } else if (name == "probe-cone") {
    result = hrv::cmd_probe_cone(config);
  } else if (name == "mixed-volume") {
    result = hrv::cmd_mixed_volume(config);
  } else {
    result = hrv::cmd_decompose(config);
  }

  try {
    hrv::write_report(result.report, config);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const hrv::ReportDocument& report = result.report;
  std::cout << report.command << ": " << report.passed << " passed, " << report.failed
            << " failed";
  if (report.worst_margin) std::cout << ", worst margin " << *report.worst_margin;
  std::cout << "\n";
  if (result.exit_code != 0) {
    for (const hrv::TrialRecord& trial : report.trials)
      for (const std::string& violation : trial.violations)
        std::cout << "  [" << trial.instance << "] " << violation << "\n";
    if (report.summary_extra.contains("config_error"))
      std::cerr << "config error: " << report.summary_extra.at("config_error").get<std::string>()
                << "\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification campaigns for mixed bilinear positivity and mixed volumes"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"verify", "Gram, Lefschetz, decomposition, metric, and coercivity checks"},
      {"probe-cone", "probe (n-2,n-2)-classes, scan paths, check limit cases"},
      {"mixed-volume", "mixed volumes, AF/BM inequalities, intersection numbers"},
      {"decompose", "work one decomposition instance in detail"},
  };

  int exit_code = 0;
  std::vector<std::unique_ptr<CommonOpts>> opts;
  for (const auto& [name, description] : commands) {
    CLI::App* cmd = app.add_subcommand(name, description);
    opts.push_back(std::make_unique<CommonOpts>());
    CommonOpts* o = opts.back().get();
    add_common_options(cmd, *o);
    cmd->callback([&exit_code, name, o] { exit_code = run_command(name, *o); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
