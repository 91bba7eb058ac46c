#include "hrv/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace hrv {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

CommandResult config_error(const char* command, const RunConfig& config, const std::string& why) {
  CommandResult result;
  result.exit_code = 2;
  result.report.command = command;
  result.report.config = config_to_json(config);
  result.report.summary_extra["config_error"] = why;
  finalize_report(result.report);
  return result;
}

struct Instance {
  int n, p, q;
};

std::vector<Instance> enumerate_instances(const RunConfig& config) {
  std::vector<Instance> out;
  for (int n = config.n_min; n <= config.n_max; ++n)
    for (int p = 0; p <= n; ++p)
      for (int q = 0; p + q <= n; ++q) {
        if (config.p_filter && *config.p_filter != p) continue;
        if (config.q_filter && *config.q_filter != q) continue;
        out.push_back({n, p, q});
      }
  return out;
}

void record_violation(TrialRecord& rec, const std::string& what) {
  rec.pass = false;
  rec.violations.push_back(what);
}

void require(TrialRecord& rec, bool ok, const std::string& what) {
  if (!ok) record_violation(rec, what);
}

// ---------------------------------------------------------------- verify --

void verify_trial(TrialRecord& rec, const Instance& inst, int trial, const RunConfig& config) {
  const ToleranceConfig& tol = config.tolerances;
  const std::uint64_t seed = mix_seed(config.master_seed, inst.n, inst.p, inst.q, trial);
  rec.details["seed"] = seed;

  const HRContext ctx = random_context(inst.n, inst.p, inst.q, seed, config.convention);

  const GramReport gram = gram_on_primitive(ctx);
  const Definiteness verdict = classify_spectrum(gram.spectrum.eigenvalues, tol.verdict);
  rec.details["primitive_dim"] = gram.gram.rows();
  rec.details["gram_verdict"] = to_string(verdict);
  rec.details["gram_min_eigenvalue"] = gram.min_eigenvalue();
  rec.details["gram_max_eigenvalue"] = gram.max_eigenvalue();
  rec.details["gram_hermiticity_residual"] = gram.hermiticity_residual;
  rec.details["spectrum"] = gram.spectrum.eigenvalues;
  if (verdict != Definiteness::positive_definite) {
    if (gram.max_eigenvalue() < 0.0)
      record_violation(rec, "sign violation: primitive Gram is negative definite");
    else
      record_violation(rec, std::string("primitive Gram verdict is ") + to_string(verdict));
  }
  require(rec, gram.hermiticity_residual <= tol.verdict, "Gram matrix is not Hermitian");

  const LefschetzReport lef = lefschetz_map(ctx);
  rec.details["lefschetz_abs_det"] = std::abs(lef.determinant);
  rec.details["lefschetz_pivot_ratio"] = lef.pivot_ratio;
  require(rec, !lef.singular && lef.pivot_ratio > tol.rank,
          "Lefschetz map is singular to tolerance");
  require(rec,
          binomial(inst.n, inst.p) * binomial(inst.n, inst.q) ==
              binomial(inst.n, inst.n - inst.q) * binomial(inst.n, inst.n - inst.p),
          "Lefschetz domain and codomain dimensions differ");

  const DecompositionCheck dc = check_lefschetz_decomposition(ctx);
  require(rec, dc.dimension_identity, "decomposition dimension identity fails");
  require(rec, dc.direct_sum, "primitive and lifted subspaces do not span directly");

  Rng rng(mix_seed(seed, 0xF0));
  const Form a = random_form(inst.n, inst.p, inst.q, rng);
  const double a_norm = euclidean_norm(a);

  const PrimitiveDecomposition d = primitive_decompose(a, ctx);
  rec.details["reconstruction_residual"] = d.reconstruction_residual;
  rec.details["primitivity_residual"] = d.primitivity_residual;
  rec.details["q_orthogonality"] = d.q_orthogonality;
  require(rec, d.reconstruction_residual <= tol.verdict * std::max(1.0, a_norm),
          "decomposition does not reconstruct the input");
  require(rec, d.primitivity_residual <= tol.verdict * d.primitivity_scale,
          "primitive part is not primitive to tolerance");
  require(rec, d.q_orthogonality <= tol.verdict * std::max(1.0, d.q_orthogonality_scale),
          "primitive and lifted parts are not Q-orthogonal");

  const Form twice = tilde(tilde(a, ctx), ctx);
  require(rec, euclidean_norm(twice - a) <= tol.verdict * std::max(1.0, a_norm),
          "sign-flipped reassembly is not an involution");

  Form rebuilt = Form::zero(inst.n, inst.p, inst.q);
  for (const LevelComponent& c : iterated_decompose(a, ctx))
    rebuilt += wedge(c.component, wedge_power(ctx.last_omega(), c.omega_exponent));
  require(rec, euclidean_norm(rebuilt - a) <= tol.verdict * std::max(1.0, a_norm),
          "iterated decomposition does not reconstruct the input");

  const cdouble metric = hr_metric(a, a, ctx);
  rec.details["metric_value"] = metric.real();
  require(rec, metric.real() > 0.0, "metric form is not positive on a nonzero form");
  require(rec, std::abs(metric.imag()) <= tol.verdict * std::max(1.0, std::abs(metric.real())),
          "metric form is not real on the diagonal");

  const CoercivityConstants constants = coercivity_constants(ctx);
  const CoercivityCheck coercivity =
      verify_coercivity(ctx, constants, 16, mix_seed(seed, 0xC0), tol.coercivity_slack);
  rec.details["coercivity_c_wedge"] = constants.c_wedge;
  rec.details["coercivity_c_q"] = constants.c_q;
  rec.details["worst_margin"] = coercivity.worst_margin;
  require(rec, coercivity.pass, "coercivity inequality violated");
}

}  // namespace

CommandResult cmd_verify(const RunConfig& config) {
  const std::string problem = validate_config(config);
  if (!problem.empty()) return config_error("verify", config, problem);
  const std::vector<Instance> instances = enumerate_instances(config);
  if (instances.empty())
    return config_error("verify", config, "bidegree filters select no instances");

  CommandResult result;
  result.report.command = "verify";
  result.report.config = config_to_json(config);
  const int total = static_cast<int>(instances.size()) * config.trials;
  result.report.trials.resize(total);

  run_indexed_jobs(total, config.workers, [&](int k) {
    const Instance& inst = instances[k / config.trials];
    const int trial = k % config.trials;
    TrialRecord rec;
    rec.index = k;
    std::ostringstream name;
    name << "n=" << inst.n << " p=" << inst.p << " q=" << inst.q << " trial=" << trial;
    rec.instance = name.str();
    const auto start = Clock::now();
    try {
      verify_trial(rec, inst, trial, config);
    } catch (const std::exception& e) {
      record_violation(rec, std::string("exception: ") + e.what());
    }
    rec.elapsed_ms = elapsed_ms_since(start);
    result.report.trials[k] = std::move(rec);
  });

  finalize_report(result.report);
  result.exit_code = result.report.failed == 0 ? 0 : 1;
  return result;
}

// ------------------------------------------------------------ probe-cone --

namespace {

// Builds the candidate described by config.extra, or a certified product of
// n-2 seeded random Kahler forms when no override is present.  Throws
// std::invalid_argument on malformed specs.
OmegaCandidate candidate_from_config(const RunConfig& config, int n) {
  if (!config.extra.contains("candidate")) {
    std::vector<KahlerSpec> specs;
    for (int i = 0; i < n - 2; ++i)
      specs.push_back(random_kahler(n, mix_seed(config.master_seed, 0xCA, i)));
    return product_candidate(n, specs);
  }
  const json& c = config.extra.at("candidate");
  const std::string kind = c.value("kind", "");
  if (kind == "product") {
    std::vector<KahlerSpec> specs;
    for (int i = 0; i < n - 2; ++i)
      specs.push_back(random_kahler(n, mix_seed(config.master_seed, 0xCA, i)));
    return product_candidate(n, specs);
  }
  if (kind == "raw_diagonal") {
    const std::vector<double> entries = c.at("entries").get<std::vector<double>>();
    if (static_cast<int>(entries.size()) != n)
      throw std::invalid_argument("candidate: raw_diagonal needs n entries");
    for (double x : entries)
      if (!std::isfinite(x)) throw std::invalid_argument("candidate: entries must be finite");
    Form form = form_from_hermitian(HermitianMatrix::diagonal(entries));
    for (int i = 0; i < n - 3; ++i)
      form = wedge(form, kahler_form(random_kahler(n, mix_seed(config.master_seed, 0xCB, i))));
    return raw_candidate(std::move(form), "raw_diagonal");
  }
  throw std::invalid_argument("candidate: unknown kind '" + kind + "'");
}

void record_probe(TrialRecord& rec, const ConeProbeResult& r) {
  rec.details["abs_det"] = std::abs(r.lefschetz_det);
  rec.details["min_primitive_eigenvalue"] = r.min_primitive_eigenvalue;
  rec.details["verdict"] = to_string(r.verdict);
  rec.details["in_locus"] = r.in_locus;
}

}  // namespace

CommandResult cmd_probe_cone(const RunConfig& config) {
  const std::string problem = validate_config(config);
  if (!problem.empty()) return config_error("probe-cone", config, problem);
  const int n = config.n_min;
  if (n < 3) return config_error("probe-cone", config, "cone probes need n >= 3");

  OmegaCandidate candidate;
  try {
    candidate = candidate_from_config(config, n);
  } catch (const std::exception& e) {
    return config_error("probe-cone", config, std::string("malformed candidate: ") + e.what());
  }

  CommandResult result;
  result.report.command = "probe-cone";
  result.report.config = config_to_json(config);
  const Form omega = kahler_form(random_kahler(n, mix_seed(config.master_seed, 0xA1)));
  const ToleranceConfig& tol = config.tolerances;

  {
    TrialRecord rec;
    rec.index = 0;
    rec.instance = "probe " + candidate.description;
    const auto start = Clock::now();
    try {
      const ConeProbeResult r = probe(candidate, omega);
      record_probe(rec, r);
      require(rec, r.verdict == Definiteness::positive_definite,
              "probed candidate is not positive definite");
      if (candidate.certified_positive)
        require(rec, !r.in_locus, "certified product candidate sits in the degeneracy locus");
    } catch (const std::exception& e) {
      record_violation(rec, std::string("exception: ") + e.what());
    }
    rec.elapsed_ms = elapsed_ms_since(start);
    result.report.trials.push_back(std::move(rec));
  }

  {
    // Scaling the candidate rescales the determinant by t^dim and must not
    // move the verdict.
    TrialRecord rec;
    rec.index = 1;
    rec.instance = "homogeneity";
    const auto start = Clock::now();
    try {
      const ConeProbeResult base = probe(candidate, omega);
      Form scaled_form = candidate.form;
      scaled_form *= 2.0;
      OmegaCandidate scaled = candidate;
      scaled.form = std::move(scaled_form);
      const ConeProbeResult r = probe(scaled, omega);
      const double expected = std::pow(2.0, n * n) * std::abs(base.lefschetz_det);
      rec.details["abs_det_scaled"] = std::abs(r.lefschetz_det);
      rec.details["abs_det_expected"] = expected;
      require(rec, r.verdict == base.verdict, "verdict changed under positive scaling");
      require(rec,
              std::abs(std::abs(r.lefschetz_det) - expected) <=
                  tol.verdict * std::max(1.0, expected),
              "determinant does not scale with degree dim");
    } catch (const std::exception& e) {
      record_violation(rec, std::string("exception: ") + e.what());
    }
    rec.elapsed_ms = elapsed_ms_since(start);
    result.report.trials.push_back(std::move(rec));
  }

  // Scans must depart from a point that is certified interior; an explicit
  // payload candidate is only the probe subject, not the scan anchor.
  OmegaCandidate scan_start = candidate;
  if (!scan_start.certified_positive) {
    std::vector<KahlerSpec> specs;
    for (int i = 0; i < n - 2; ++i)
      specs.push_back(random_kahler(n, mix_seed(config.master_seed, 0xCA, i)));
    scan_start = product_candidate(n, specs);
  }

  {
    TrialRecord rec;
    rec.index = 2;
    rec.instance = "failing path scan";
    const auto start = Clock::now();
    try {
      const std::optional<OmegaCandidate> failing =
          find_failing_candidate(n, omega, mix_seed(config.master_seed, 0xFA));
      if (!failing) {
        record_violation(rec, "no failing candidate found by seeded search");
      } else {
        rec.details["failing_candidate"] = failing->description;
        const PathScanResult scan =
            path_scan(scan_start, *failing, config.scan_steps, omega);
        if (scan.t_first_fail) rec.details["t_first_fail"] = *scan.t_first_fail;
        if (scan.t_det_zero) rec.details["t_det_zero"] = *scan.t_det_zero;
        require(rec, scan.t_first_fail.has_value(), "scan to a failing candidate never fails");
        require(rec, scan.t_det_zero.has_value(), "scan to a failing candidate never crosses");
        if (scan.t_first_fail && scan.t_det_zero)
          require(rec,
                  std::abs(*scan.t_first_fail - *scan.t_det_zero) <=
                      2.0 / config.scan_steps + 1e-12,
                  "verdict failure and determinant crossing disagree beyond grid resolution");
      }
    } catch (const std::exception& e) {
      record_violation(rec, std::string("exception: ") + e.what());
    }
    rec.elapsed_ms = elapsed_ms_since(start);
    result.report.trials.push_back(std::move(rec));
  }

  {
    TrialRecord rec;
    rec.index = 3;
    rec.instance = "certified segment scan";
    const auto start = Clock::now();
    try {
      std::vector<KahlerSpec> specs;
      for (int i = 0; i < n - 2; ++i)
        specs.push_back(random_kahler(n, mix_seed(config.master_seed, 0xCE, i)));
      const OmegaCandidate other = product_candidate(n, specs);
      const PathScanResult scan = path_scan(scan_start, other, config.scan_steps, omega);
      require(rec, !scan.t_first_fail.has_value(),
              "segment between certified products loses positive definiteness");
    } catch (const std::exception& e) {
      record_violation(rec, std::string("exception: ") + e.what());
    }
    rec.elapsed_ms = elapsed_ms_since(start);
    result.report.trials.push_back(std::move(rec));
  }

  const int base_index = static_cast<int>(result.report.trials.size());
  std::vector<TrialRecord> limit_trials(config.trials);
  run_indexed_jobs(config.trials, config.workers, [&](int t) {
    TrialRecord rec;
    rec.index = base_index + t;
    rec.instance = "limit case trial=" + std::to_string(t);
    const auto start = Clock::now();
    try {
      const std::uint64_t seed = mix_seed(config.master_seed, 0x11CA5E, t);
      Rng rng(seed);
      const auto psd_form = [&](int slot) {
        const int rank = 1 + static_cast<int>(rng.next() % n);
        return kahler_form(random_psd(n, rank, mix_seed(seed, static_cast<std::uint64_t>(slot))));
      };
      const Form c = psd_form(0);
      std::vector<Form> middle;
      for (int i = 0; i < n - 2; ++i) middle.push_back(psd_form(1 + i));
      const Form last = kahler_form(random_kahler(n, mix_seed(seed, 0x1A57)));
      const LimitCaseReport rep = limit_case_check(c, middle, last);
      rec.details["base_norm"] = rep.base_norm;
      rec.details["full_norm"] = rep.full_norm;
      rec.details["square_norm"] = rep.square_norm;
      rec.details["base_vanishes"] = rep.base_vanishes;
      require(rec, rep.biconditional, "limit-case vanishing equivalence fails");
    } catch (const std::exception& e) {
      record_violation(rec, std::string("exception: ") + e.what());
    }
    rec.elapsed_ms = elapsed_ms_since(start);
    limit_trials[t] = std::move(rec);
  });
  for (TrialRecord& rec : limit_trials) result.report.trials.push_back(std::move(rec));

  finalize_report(result.report);
  result.exit_code = result.report.failed == 0 ? 0 : 1;
  return result;
}

// ---------------------------------------------------------- mixed-volume --

namespace {

ConvexBody body_from_json(const json& j) {
  const std::string kind = j.value("kind", "");
  if (kind == "box") return ConvexBody::box(j.at("widths").get<std::vector<double>>());
  if (kind == "zonotope")
    return ConvexBody::zonotope(j.at("n").get<int>(),
                                j.at("generators").get<std::vector<std::vector<double>>>());
  throw std::invalid_argument("body: unknown kind '" + kind + "'");
}

ConvexBody scale_body(const ConvexBody& body, double factor) {
  ConvexBody out = body;
  for (double& w : out.widths) w *= factor;
  for (std::vector<double>& g : out.generators)
    for (double& x : g) x *= factor;
  return out;
}

// Bodies for a random trial.  Zonotopes are restricted to n <= 5 and
// three-body queries to n <= 3 to keep subset-determinant sums desk-scale.
void mixed_volume_trial(TrialRecord& rec, const RunConfig& config, int trial) {
  const ToleranceConfig& tol = config.tolerances;
  Rng rng(mix_seed(config.master_seed, 0x3F, trial));
  const int n_lo = std::max(2, config.n_min);
  int n = n_lo + static_cast<int>(rng.next() % (config.n_max - n_lo + 1));
  const int r = (n <= 3 && rng.uniform01() < 0.5) ? 3 : 2;
  // Subset-determinant volume sums grow as C(pooled generators, n); keep
  // zonotopes to small n and use boxes (product volumes) above.
  const bool zonotopes_ok = n <= 3;
  rec.instance = "mixed volume n=" + std::to_string(n) + " r=" + std::to_string(r) +
                 " trial=" + std::to_string(trial);

  const auto random_body = [&]() {
    if (zonotopes_ok && rng.uniform01() < 0.5) return random_zonotope(n, rng);
    return random_box(n, rng);
  };

  std::vector<ConvexBody> bodies;
  for (int i = 0; i < r; ++i) bodies.push_back(random_body());
  std::vector<int> multiplicities(r, 0);
  int left = n;
  for (int i = 0; i + 1 < r; ++i) {
    multiplicities[i] = static_cast<int>(rng.next() % (left + 1));
    left -= multiplicities[i];
  }
  multiplicities[r - 1] = left;

  double worst = std::numeric_limits<double>::infinity();
  const auto note_margin = [&](double margin, double scale) {
    worst = std::min(worst, scale > 0.0 ? margin / scale : margin);
  };

  const double pol = mixed_volume(bodies, multiplicities, MixedVolumeMethod::polarization).value;
  const double interp =
      mixed_volume(bodies, multiplicities, MixedVolumeMethod::interpolation).value;
  rec.details["value_polarization"] = pol;
  rec.details["value_interpolation"] = interp;
  require(rec, std::abs(pol - interp) <= tol.verdict * std::max(1.0, std::abs(pol)),
          "polarization and interpolation disagree");
  require(rec, pol >= -tol.verdict, "mixed volume is negative");

  // Diagonal slice: V(K,...,K) must equal Vol(K).
  std::vector<int> pure(r, 0);
  pure[0] = n;
  const double diag = mixed_volume(bodies, pure).value;
  const double vol = volume({{1.0, bodies[0]}});
  require(rec, std::abs(diag - vol) <= tol.verdict * std::max(1.0, vol),
          "pure-power mixed volume differs from the volume");

  // Aleksandrov-Fenchel with random fill, plus the homothetic equality case.
  std::vector<ConvexBody> fill;
  for (int i = 0; i < n - 2; ++i)
    fill.push_back(zonotopes_ok && rng.uniform01() < 0.3 ? random_zonotope(n, rng)
                                                         : random_box(n, rng));
  const ConvexBody k1 = random_body();
  const ConvexBody k2 = random_body();
  const InequalityReport af = af_check(k1, k2, fill);
  rec.details["af_margin"] = af.margin;
  require(rec, af.pass, "Aleksandrov-Fenchel margin is negative beyond tolerance");
  note_margin(af.margin, af.scale);

  const InequalityReport af_eq = af_check(k1, scale_body(k1, 0.25 + rng.uniform01()), fill);
  require(rec, std::abs(af_eq.margin) <= tol.identity * std::max(1.0, af_eq.scale),
          "homothetic Aleksandrov-Fenchel case is not an equality");

  const InequalityReport bm = brunn_minkowski_check(k1, k2);
  rec.details["bm_margin"] = bm.margin;
  require(rec, bm.pass, "Brunn-Minkowski margin is negative beyond tolerance");
  note_margin(bm.margin, bm.scale);

  const InequalityReport bm_eq = brunn_minkowski_check(k1, scale_body(k1, 0.25 + rng.uniform01()));
  require(rec, std::abs(bm_eq.margin) <= tol.identity * std::max(1.0, bm_eq.scale),
          "homothetic Brunn-Minkowski case is not an equality");

  if (n <= 5) {
    // Intersection-number mirror with strictly positive classes, and the
    // diagonal dictionary against n! times the box mixed volume.
    std::vector<Form> classes;
    for (int i = 0; i < n; ++i)
      classes.push_back(
          kahler_form(random_kahler(n, mix_seed(config.master_seed, 0x4B, trial, i))));
    const InequalityReport kt = kt_inequality(classes);
    rec.details["kt_margin"] = kt.margin;
    require(rec, kt.pass, "intersection-number inequality margin is negative beyond tolerance");
    note_margin(kt.margin, kt.scale);

    std::vector<Form> diag_classes;
    std::vector<ConvexBody> diag_boxes;
    for (int i = 0; i < n; ++i) {
      std::vector<double> entries(n);
      for (double& x : entries) x = 0.2 + rng.uniform01();
      diag_classes.push_back(form_from_hermitian(HermitianMatrix::diagonal(entries)));
      diag_boxes.push_back(ConvexBody::box(entries));
    }
    double factorial_n = 1.0;
    for (int i = 2; i <= n; ++i) factorial_n *= i;
    const double lhs = intersection_number(diag_classes);
    const double rhs =
        factorial_n * mixed_volume(diag_boxes, std::vector<int>(n, 1)).value;
    rec.details["dictionary_intersection"] = lhs;
    rec.details["dictionary_scaled_mixed_volume"] = rhs;
    require(rec, std::abs(lhs - rhs) <= tol.verdict * std::max(1.0, std::abs(lhs)),
            "diagonal dictionary proportionality fails");
  }

  if (std::isfinite(worst)) rec.details["worst_margin"] = worst;
}

}  // namespace

CommandResult cmd_mixed_volume(const RunConfig& config) {
  const std::string problem = validate_config(config);
  if (!problem.empty()) return config_error("mixed-volume", config, problem);

  CommandResult result;
  result.report.command = "mixed-volume";
  result.report.config = config_to_json(config);
  const ToleranceConfig& tol = config.tolerances;

  if (config.extra.contains("bodies") || config.extra.contains("I")) {
    TrialRecord rec;
    rec.index = 0;
    rec.instance = "query";
    const auto start = Clock::now();
    try {
      std::vector<ConvexBody> bodies;
      for (const json& b : config.extra.at("bodies")) bodies.push_back(body_from_json(b));
      const std::vector<int> multiplicities = config.extra.at("I").get<std::vector<int>>();
      const double pol = mixed_volume(bodies, multiplicities).value;
      const double interp =
          mixed_volume(bodies, multiplicities, MixedVolumeMethod::interpolation).value;
      rec.details["value_polarization"] = pol;
      rec.details["value_interpolation"] = interp;
      require(rec, std::abs(pol - interp) <= tol.verdict * std::max(1.0, std::abs(pol)),
              "polarization and interpolation disagree");
      rec.elapsed_ms = elapsed_ms_since(start);
      result.report.trials.push_back(std::move(rec));
    } catch (const std::exception& e) {
      return config_error("mixed-volume", config, std::string("malformed query: ") + e.what());
    }
  } else {
    if (config.n_max < 2)
      return config_error("mixed-volume", config, "mixed-volume campaigns need n_max >= 2");
    result.report.trials.resize(config.trials);
    run_indexed_jobs(config.trials, config.workers, [&](int t) {
      TrialRecord rec;
      rec.index = t;
      const auto start = Clock::now();
      try {
        mixed_volume_trial(rec, config, t);
      } catch (const std::exception& e) {
        record_violation(rec, std::string("exception: ") + e.what());
      }
      rec.elapsed_ms = elapsed_ms_since(start);
      result.report.trials[t] = std::move(rec);
    });
  }

  finalize_report(result.report);
  result.exit_code = result.report.failed == 0 ? 0 : 1;
  return result;
}

// ------------------------------------------------------------- decompose --

CommandResult cmd_decompose(const RunConfig& config) {
  const std::string problem = validate_config(config);
  if (!problem.empty()) return config_error("decompose", config, problem);
  const int n = config.n_min;
  const int p = config.p_filter.value_or(std::min(1, n));
  const int q = config.q_filter.value_or(std::min(1, n - p));
  if (p + q > n) return config_error("decompose", config, "p + q exceeds n");

  CommandResult result;
  result.report.command = "decompose";
  result.report.config = config_to_json(config);
  const ToleranceConfig& tol = config.tolerances;

  TrialRecord rec;
  rec.index = 0;
  std::ostringstream name;
  name << "decompose n=" << n << " p=" << p << " q=" << q;
  rec.instance = name.str();
  const auto start = Clock::now();
  try {
    const std::uint64_t seed = mix_seed(config.master_seed, 0xDE);
    const HRContext ctx = random_context(n, p, q, seed, config.convention);
    Rng rng(mix_seed(seed, 0xF0));
    const Form a = random_form(n, p, q, rng);
    const double a_norm = euclidean_norm(a);
    rec.details["input_norm"] = a_norm;

    const PrimitiveDecomposition d = primitive_decompose(a, ctx);
    rec.details["primitive_norm"] = euclidean_norm(d.primitive_part);
    rec.details["lower_norm"] = euclidean_norm(d.lower_part);
    rec.details["reconstruction_residual"] = d.reconstruction_residual;
    rec.details["primitivity_residual"] = d.primitivity_residual;
    rec.details["q_orthogonality"] = d.q_orthogonality;
    require(rec, d.reconstruction_residual <= tol.verdict * std::max(1.0, a_norm),
            "decomposition does not reconstruct the input");

    json levels = json::array();
    Form rebuilt = Form::zero(n, p, q);
    for (const LevelComponent& c : iterated_decompose(a, ctx)) {
      levels.push_back({{"omega_exponent", c.omega_exponent},
                        {"component_norm", euclidean_norm(c.component)}});
      rebuilt += wedge(c.component, wedge_power(ctx.last_omega(), c.omega_exponent));
    }
    rec.details["levels"] = std::move(levels);
    require(rec, euclidean_norm(rebuilt - a) <= tol.verdict * std::max(1.0, a_norm),
            "iterated decomposition does not reconstruct the input");

    const cdouble metric = hr_metric(a, a, ctx);
    rec.details["metric_value"] = metric.real();
    require(rec, metric.real() > 0.0, "metric form is not positive on a nonzero form");

    const CoercivityConstants constants = coercivity_constants(ctx);
    rec.details["two_sided_bound"] = constants.two_sided_bound;
    rec.details["splitting_constant"] = constants.splitting_constant;
    rec.details["gram_inverse_bound"] = constants.gram_inverse_bound;
    rec.details["c_wedge"] = constants.c_wedge;
    rec.details["c_q"] = constants.c_q;
  } catch (const std::exception& e) {
    record_violation(rec, std::string("exception: ") + e.what());
  }
  rec.elapsed_ms = elapsed_ms_since(start);
  result.report.trials.push_back(std::move(rec));

  finalize_report(result.report);
  result.exit_code = result.report.failed == 0 ? 0 : 1;
  return result;
}

void run_indexed_jobs(int count, int workers, const std::function<void(int)>& job) {
  if (count <= 0) return;
  int pool_size = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (pool_size < 1) pool_size = 1;
  pool_size = std::min(pool_size, count);
  if (pool_size == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(pool_size);
  for (int t = 0; t < pool_size; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) job(i);
    });
  for (std::thread& th : pool) th.join();
}

}  // namespace hrv
