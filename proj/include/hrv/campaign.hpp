#pragma once
// Campaign runners behind the CLI subcommands.  Each command validates its
// config, runs seeded trials (concurrently where independent), and returns
// an exit code with a full report: 0 all properties hold, 1 at least one
// violation, 2 config or input error.

#include <functional>

#include "hrv/cone_explorer.hpp"
#include "hrv/convex_volumes.hpp"
#include "hrv/report.hpp"

namespace hrv {

struct CommandResult {
  int exit_code = 0;
  ReportDocument report;
};

// Gram, Lefschetz, decomposition, metric, and coercivity checks per seeded
// instance over the configured (n, p, q) range.
CommandResult cmd_verify(const RunConfig& config);

// Cone probes at n = n_min: certified products, a failing-candidate search
// with a path scan, and limit-case trials.
CommandResult cmd_probe_cone(const RunConfig& config);

// Single mixed-volume query (config.extra carries bodies and I) or a random
// campaign with method agreement, AF, BM, and intersection-number checks.
CommandResult cmd_mixed_volume(const RunConfig& config);

// One instance worked in detail: decomposition levels, residuals, metric
// value, coercivity constants.
CommandResult cmd_decompose(const RunConfig& config);

// Runs job(0), ..., job(count-1) across at most `workers` threads (0 means
// hardware concurrency).  Callers aggregate by index, so scheduling order
// cannot affect results; jobs must not throw.
void run_indexed_jobs(int count, int workers, const std::function<void(int)>& job);

}  // namespace hrv
