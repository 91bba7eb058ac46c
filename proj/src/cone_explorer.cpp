#include "hrv/cone_explorer.hpp"

#include <cmath>
#include <stdexcept>

#include "hrv/rng.hpp"

namespace hrv {

namespace {

constexpr double kLocusRelTol = 1e-9;

void check_candidate_shape(const Form& f) {
  if (f.n < 3) throw std::invalid_argument("cone probes need ambient dimension >= 3");
  if (f.p != f.n - 2 || f.q != f.n - 2)
    throw std::invalid_argument("candidate must have bidegree (n-2, n-2)");
}

void check_probe_omega(const Form& omega, int n) {
  if (omega.n != n || omega.p != 1 || omega.q != 1)
    throw std::invalid_argument("probe needs a (1,1)-form on the same ambient space");
  if (!is_strictly_positive(omega).strict)
    throw std::invalid_argument("probe needs a strictly positive (1,1)-form");
}

// Core probe on a bare (n-2,n-2)-form.  Tolerates degenerate forms (zero
// included) so path scans can pass through them; the zero-candidate error
// belongs to the public entry point.
ConeProbeResult probe_form(const Form& cap, const Form& omega) {
  const int n = cap.n;
  ConeProbeResult out;

  const ComplexMatrix lef = operator_matrix(
      [&cap](const Form& f) { return wedge(f, cap); }, n, 1, 1, n - 1, n - 1);
  const LuFactors lu = lu_factor(lef);
  out.lefschetz_det = lu.determinant();
  double max_pivot = 0.0;
  for (int i = 0; i < lu.lu.rows(); ++i) max_pivot = std::max(max_pivot, std::abs(lu.lu(i, i)));
  out.det_scale = std::pow(max_pivot, lef.rows());
  out.in_locus = std::abs(out.lefschetz_det) <= kLocusRelTol * out.det_scale;

  const Form cap_omega = wedge(cap, omega);
  const ComplexMatrix to_top = operator_matrix(
      [&cap_omega](const Form& f) { return wedge(f, cap_omega); }, n, 1, 1, n, n);
  std::vector<Form> basis;
  for (std::vector<cdouble>& v : kernel_basis(to_top)) {
    for (cdouble& c : v) c *= 0.5;  // unit Euclidean form norm at degree 2
    basis.push_back(form_from_coefficients(n, 1, 1, v));
  }
  const GramReport gram = q_gram(basis, cap, hodge_riemann_sign(n, 1, 1, SignConvention::classical));
  out.min_primitive_eigenvalue = gram.min_eigenvalue();
  out.verdict = gram.verdict;
  return out;
}

Form interpolate(const Form& a, const Form& b, double t) {
  Form out = a;
  out *= 1.0 - t;
  Form tb = b;
  tb *= t;
  out += tb;
  return out;
}

}  // namespace

OmegaCandidate raw_candidate(Form f, std::string description) {
  check_candidate_shape(f);
  OmegaCandidate c;
  c.n = f.n;
  c.form = std::move(f);
  c.certified_positive = false;
  c.description = std::move(description);
  return c;
}

OmegaCandidate combination_candidate(
    int n, const std::vector<std::pair<double, std::vector<KahlerSpec>>>& combo) {
  if (n < 3 || n > kMaxAmbientDimension)
    throw std::invalid_argument("combination candidate: ambient dimension out of range");
  OmegaCandidate c;
  c.n = n;
  c.form = Form::zero(n, n - 2, n - 2);
  c.description = "combination";
  double total_weight = 0.0;
  bool all_strict = true;
  for (const auto& [weight, specs] : combo) {
    if (weight < 0.0) throw std::invalid_argument("combination candidate: negative weight");
    if (static_cast<int>(specs.size()) != n - 2)
      throw std::invalid_argument("combination candidate: each term needs n-2 factors");
    if (weight == 0.0) continue;
    std::vector<Form> factors;
    factors.reserve(specs.size());
    for (const KahlerSpec& spec : specs) {
      const Form omega = kahler_form(spec);
      if (!is_strictly_positive(omega).strict) all_strict = false;
      factors.push_back(omega);
    }
    Form term = wedge_all(factors);
    term *= weight;
    c.form += term;
    total_weight += weight;
  }
  c.certified_positive = total_weight > 0.0 && all_strict;
  return c;
}

OmegaCandidate product_candidate(int n, const std::vector<KahlerSpec>& specs) {
  OmegaCandidate c = combination_candidate(n, {{1.0, specs}});
  c.description = "product";
  return c;
}

ConeProbeResult probe(const OmegaCandidate& candidate, const Form& omega) {
  check_candidate_shape(candidate.form);
  check_probe_omega(omega, candidate.n);
  if (candidate.form.is_zero(0.0)) throw std::invalid_argument("probe: zero candidate");
  if (candidate.certified_positive && wedge(candidate.form, omega).is_zero(0.0))
    throw std::logic_error("probe: certified candidate wedges to zero against omega");
  return probe_form(candidate.form, omega);
}

PathScanResult path_scan(const OmegaCandidate& start, const OmegaCandidate& end, int steps,
                         const Form& omega) {
  if (steps < 16) throw std::invalid_argument("path_scan: need at least 16 steps");
  if (start.n != end.n) throw std::invalid_argument("path_scan: mismatched ambient dimensions");
  if (!start.certified_positive)
    throw std::invalid_argument("path_scan: start must be a certified positive combination");
  check_candidate_shape(start.form);
  check_candidate_shape(end.form);
  check_probe_omega(omega, start.n);

  PathScanResult result;
  result.samples.reserve(steps + 1);
  std::vector<cdouble> dets;
  dets.reserve(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    const ConeProbeResult r = probe_form(interpolate(start.form, end.form, t), omega);
    PathSample s;
    s.t = t;
    s.abs_det = std::abs(r.lefschetz_det);
    s.min_eigenvalue = r.min_primitive_eigenvalue;
    s.verdict = r.verdict;
    result.samples.push_back(s);
    dets.push_back(r.lefschetz_det);
  }

  // Real candidates keep the determinant on one line through the origin, so
  // project onto the phase of the largest sample to get a signed scalar.
  size_t max_index = 0;
  double max_abs = 0.0;
  for (size_t k = 0; k < result.samples.size(); ++k) {
    if (result.samples[k].abs_det > max_abs) {
      max_abs = result.samples[k].abs_det;
      max_index = k;
    }
  }
  const cdouble phase = max_abs > 0.0 ? dets[max_index] / max_abs : cdouble(1.0);
  const double det_floor = kLocusRelTol * max_abs;
  for (size_t k = 0; k < result.samples.size(); ++k) {
    PathSample& s = result.samples[k];
    s.signed_det = (dets[k] * std::conj(phase)).real();
    s.in_locus = s.abs_det <= det_floor;
    if (!result.t_first_fail && s.verdict != Definiteness::positive_definite)
      result.t_first_fail = s.t;
    if (!result.t_det_zero) {
      const bool sign_change =
          k > 0 && result.samples[k - 1].signed_det * s.signed_det < 0.0;
      if (s.in_locus || sign_change) result.t_det_zero = s.t;
    }
  }
  return result;
}

std::optional<OmegaCandidate> find_failing_candidate(int n, const Form& omega, std::uint64_t seed,
                                                     int max_attempts) {
  if (n < 3) throw std::invalid_argument("find_failing_candidate: need n >= 3");
  check_probe_omega(omega, n);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng(mix_seed(seed, attempt));
    ComplexMatrix b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = cdouble(rng.uniform_symmetric(), rng.uniform_symmetric());
    ComplexMatrix sym(n, n);
    const ComplexMatrix bt = b.adjoint();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sym(i, j) = 0.5 * (b(i, j) + bt(i, j));
    const HermitianMatrix h = HermitianMatrix::from_full(sym);
    const std::vector<double> eigs = h.eigenvalues();
    if (eigs.front() > -1e-3 || eigs.back() < 1e-3) continue;  // not solidly indefinite

    Form candidate = form_from_hermitian(h);
    for (int i = 0; i < n - 3; ++i) {
      const KahlerSpec spec =
          random_kahler(n, mix_seed(seed, attempt, 1000u + i));
      candidate = wedge(candidate, kahler_form(spec));
    }
    if (candidate.is_zero(0.0)) continue;
    OmegaCandidate cand = raw_candidate(
        std::move(candidate), "search(seed=" + std::to_string(seed) +
                                  ", attempt=" + std::to_string(attempt) + ")");
    if (probe(cand, omega).verdict == Definiteness::indefinite) return cand;
  }
  return std::nullopt;
}

LimitCaseReport limit_case_check(const Form& c, const std::vector<Form>& c_list,
                                 const Form& c_last) {
  const int n = c.n;
  if (n < 3) throw std::invalid_argument("limit_case_check: need n >= 3");
  if (c.p != 1 || c.q != 1) throw std::invalid_argument("limit_case_check: c must be a (1,1)-form");
  if (static_cast<int>(c_list.size()) != n - 2)
    throw std::invalid_argument("limit_case_check: need n-2 middle factors");
  for (const Form& ci : c_list)
    if (ci.n != n || ci.p != 1 || ci.q != 1)
      throw std::invalid_argument("limit_case_check: middle factors must be (1,1)-forms");
  if (c_last.n != n || c_last.p != 1 || c_last.q != 1 || !is_strictly_positive(c_last).strict)
    throw std::invalid_argument("limit_case_check: last factor must be strictly positive");

  const Form product = wedge_all(c_list);
  const Form base = wedge(c, product);
  const Form full = wedge(base, c_last);
  const Form square = wedge(c, base);

  double factor_norms = 1.0;
  for (const Form& ci : c_list) factor_norms *= euclidean_norm(ci);

  LimitCaseReport report;
  report.base_norm = euclidean_norm(base);
  report.full_norm = euclidean_norm(full);
  report.square_norm = euclidean_norm(square);
  report.base_scale = euclidean_norm(c) * factor_norms;
  report.full_scale = report.base_scale * euclidean_norm(c_last);
  report.square_scale = euclidean_norm(c) * report.base_scale;
  report.base_vanishes = report.base_norm <= kLocusRelTol * report.base_scale;
  report.full_vanishes = report.full_norm <= kLocusRelTol * report.full_scale;
  report.square_vanishes = report.square_norm <= kLocusRelTol * report.square_scale;
  report.biconditional = (report.full_vanishes && report.square_vanishes) == report.base_vanishes;
  return report;
}

}  // namespace hrv
