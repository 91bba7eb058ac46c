#include "hrv/hr_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "hrv/rng.hpp"

namespace hrv {

cdouble hodge_riemann_sign(int n, int p, int q, SignConvention convention) {
  static const cdouble i_powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int m = ((p - q) % 4 + 4) % 4;
  cdouble eps = i_powers[m];
  const int k = (convention == SignConvention::classical) ? p + q : n - p - q;
  if ((k * (k - 1) / 2) % 2 != 0) eps = -eps;
  return eps;
}

HRContext make_context(int n, int p, int q, std::vector<Form> kahler_tuple,
                       SignConvention convention) {
  if (n < 1 || n > kMaxAmbientDimension) throw std::invalid_argument("ambient dimension out of range");
  if (p < 0 || q < 0 || p + q > n) throw std::invalid_argument("bidegree out of range");
  const size_t expected = static_cast<size_t>(n - p - q + 1);
  if (kahler_tuple.size() != expected) throw std::invalid_argument("kahler tuple has wrong length");
  for (const Form& omega : kahler_tuple) {
    if (omega.n != n) throw std::invalid_argument("kahler tuple entry has wrong ambient dimension");
    if (!is_strictly_positive(omega).strict)
      throw std::invalid_argument("kahler tuple entry is not strictly positive");
  }

  HRContext ctx;
  ctx.n = n;
  ctx.p = p;
  ctx.q = q;
  ctx.kahler_tuple = std::move(kahler_tuple);
  ctx.convention = convention;
  ctx.sign_factor = hodge_riemann_sign(n, p, q, convention);
  ctx.omega_cap = Form::constant(n, 1.0);
  for (int i = 0; i < n - p - q; ++i) ctx.omega_cap = wedge(ctx.omega_cap, ctx.kahler_tuple[i]);
  return ctx;
}

HRContext make_context(int n, int p, int q, const std::vector<KahlerSpec>& tuple,
                       SignConvention convention) {
  std::vector<Form> forms;
  forms.reserve(tuple.size());
  for (const KahlerSpec& spec : tuple) forms.push_back(kahler_form(spec));
  return make_context(n, p, q, std::move(forms), convention);
}

HRContext random_context(int n, int p, int q, std::uint64_t seed, SignConvention convention) {
  std::vector<Form> tuple;
  for (int i = 0; i <= n - p - q; ++i)
    tuple.push_back(kahler_form(random_kahler(n, mix_seed(seed, i))));
  return make_context(n, p, q, std::move(tuple), convention);
}

namespace {

void check_context_form(const Form& a, const HRContext& ctx, const char* what) {
  if (a.n != ctx.n || a.p != ctx.p || a.q != ctx.q)
    throw std::invalid_argument(std::string(what) + ": form does not match the context bidegree");
}

}  // namespace

cdouble q_form(const Form& a, const Form& b, const HRContext& ctx) {
  check_context_form(a, ctx, "q_form");
  check_context_form(b, ctx, "q_form");
  const Form w = wedge(conjugate(b), ctx.omega_cap);
  return ctx.sign_factor * top_pair(a, w);
}

LefschetzReport lefschetz_map(const HRContext& ctx) {
  const int n = ctx.n;
  const Form& cap = ctx.omega_cap;
  ComplexMatrix m = operator_matrix([&cap](const Form& f) { return wedge(f, cap); }, n, ctx.p,
                                    ctx.q, n - ctx.q, n - ctx.p);
  LefschetzReport report;
  const LuFactors f = lu_factor(m);
  report.matrix = std::move(m);
  report.determinant = f.determinant();
  report.pivot_ratio = f.pivot_ratio;
  report.singular = f.singular;
  return report;
}

PrimitiveSpace primitive_basis(const HRContext& ctx) {
  const int n = ctx.n;
  const Form cap = wedge(ctx.omega_cap, ctx.last_omega());
  // Wedging with cap raises both degrees by n-p-q+1; past n the target space
  // is zero and the whole component is primitive.
  const int cp = ctx.p + (n - ctx.p - ctx.q) + 1;
  const int cq = ctx.q + (n - ctx.p - ctx.q) + 1;
  ComplexMatrix m = operator_matrix([&cap](const Form& f) { return wedge(f, cap); }, n, ctx.p,
                                    ctx.q, cp <= n ? cp : -1, cq <= n ? cq : -1);
  PrimitiveSpace space;
  space.n = n;
  space.p = ctx.p;
  space.q = ctx.q;
  const double unit = std::pow(2.0, -0.5 * (ctx.p + ctx.q));
  for (std::vector<cdouble>& v : kernel_basis(m)) {
    for (cdouble& c : v) c *= unit;  // unit Euclidean form norm
    space.basis.push_back(form_from_coefficients(n, ctx.p, ctx.q, v));
  }
  return space;
}

const char* to_string(Definiteness verdict) {
  switch (verdict) {
    case Definiteness::positive_definite: return "positive-definite";
    case Definiteness::semi_definite: return "semi-definite";
    case Definiteness::indefinite: return "indefinite";
  }
  return "unknown";
}

Definiteness classify_spectrum(const std::vector<double>& eigenvalues, double rel_tol) {
  if (eigenvalues.empty()) return Definiteness::positive_definite;
  double max_abs = 0.0;
  for (double v : eigenvalues) max_abs = std::max(max_abs, std::abs(v));
  const double band = rel_tol * std::max(1.0, max_abs);
  const double min = eigenvalues.front();
  if (min > band) return Definiteness::positive_definite;
  if (min < -band) return Definiteness::indefinite;
  return Definiteness::semi_definite;
}

double GramReport::min_eigenvalue() const {
  return spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.front();
}

double GramReport::max_eigenvalue() const {
  return spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.back();
}

GramReport q_gram(const std::vector<Form>& basis, const Form& omega_cap, cdouble sign_factor) {
  const int dim = static_cast<int>(basis.size());
  GramReport report;
  report.gram = ComplexMatrix(dim, dim);
  std::vector<Form> paired;
  paired.reserve(dim);
  for (const Form& b : basis) paired.push_back(wedge(conjugate(b), omega_cap));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      report.gram(i, j) = sign_factor * top_pair(basis[i], paired[j]);
  report.hermiticity_residual =
      dim == 0 ? 0.0 : report.gram.hermiticity_residual() / std::max(1.0, report.gram.frobenius_norm());
  report.spectrum = hermitian_eigenvalues(report.gram);
  report.verdict = classify_spectrum(report.spectrum.eigenvalues);
  return report;
}

GramReport gram_on_primitive(const HRContext& ctx) {
  return q_gram(primitive_basis(ctx).basis, ctx.omega_cap, ctx.sign_factor);
}

namespace {

// One Lefschetz splitting a = beta + omega ^ gamma at a fixed level.  cap is
// the positive product completing the level's primitivity condition: beta
// satisfies beta ^ cap ^ omega = 0 and gamma solves
// gamma ^ cap ^ omega^2 = a ^ cap ^ omega.
struct LevelSplitter {
  int n, p, q;          // bidegree of the level's input forms
  Form cap_omega;       // cap ^ omega
  LuFactors t_lu;       // factorized T: gamma -> gamma ^ cap ^ omega^2

  LevelSplitter(const Form& cap, const Form& omega, int n_, int p_, int q_)
      : n(n_), p(p_), q(q_) {
    cap_omega = wedge(cap, omega);
    const Form cap_omega2 = wedge(cap_omega, omega);
    // Bidegree bookkeeping: gamma in (p-1,q-1) lands in codomain raised by
    // the (1,1)-factor count of cap ^ omega^2.
    const int lift = cap_omega2.p;  // cap products are (k,k)-forms
    const ComplexMatrix t = operator_matrix(
        [&cap_omega2](const Form& f) { return wedge(f, cap_omega2); }, n, p - 1, q - 1,
        p - 1 + lift, q - 1 + lift);
    if (t.rows() != t.cols()) throw std::runtime_error("level map is not square");
    t_lu = lu_factor(t);
    if (t_lu.singular) throw std::runtime_error("level map is singular; tuple not positive enough");
  }

  // Returns (beta, gamma).
  std::pair<Form, Form> split(const Form& a, const Form& omega) const {
    const Form rhs = wedge(a, cap_omega);
    const std::vector<cdouble> gamma_coeffs = t_lu.solve(rhs.coeffs);
    Form gamma = form_from_coefficients(n, p - 1, q - 1, gamma_coeffs);
    Form beta = a - wedge(omega, gamma);
    return {std::move(beta), std::move(gamma)};
  }
};

std::vector<LevelComponent> iterated_decompose_sorted(const Form& a, const HRContext& ctx) {
  // Assumes ctx.p <= ctx.q.
  const Form& omega = ctx.last_omega();
  std::vector<LevelComponent> components;
  Form cur = a;
  Form cap = ctx.omega_cap;
  for (int j = ctx.p; j >= 1; --j) {
    const int qj = ctx.q - ctx.p + j;
    LevelSplitter splitter(cap, omega, ctx.n, j, qj);
    auto [beta, gamma] = splitter.split(cur, omega);
    components.push_back({std::move(beta), ctx.p - j});
    cur = std::move(gamma);
    cap = wedge(wedge(cap, omega), omega);  // next level completes with two more omegas
  }
  components.push_back({std::move(cur), ctx.p});
  return components;
}

}  // namespace

PrimitiveDecomposition primitive_decompose(const Form& a, const HRContext& ctx) {
  check_context_form(a, ctx, "primitive_decompose");
  const Form& omega = ctx.last_omega();
  const Form cap_omega = wedge(ctx.omega_cap, omega);

  PrimitiveDecomposition d;
  d.input = a;
  if (ctx.p == 0 || ctx.q == 0) {
    d.primitive_part = a;
    d.lower_part = Form::zero(ctx.n, ctx.p > 0 ? ctx.p - 1 : 0, ctx.q > 0 ? ctx.q - 1 : 0);
    d.primitivity_residual = euclidean_norm(wedge(a, cap_omega));
    d.primitivity_scale = euclidean_norm(a) * euclidean_norm(cap_omega);
    return d;
  }

  LevelSplitter splitter(ctx.omega_cap, omega, ctx.n, ctx.p, ctx.q);
  auto [beta, gamma] = splitter.split(a, omega);
  const Form omega_gamma = wedge(omega, gamma);
  d.reconstruction_residual = euclidean_norm(a - beta - omega_gamma);
  d.primitivity_residual = euclidean_norm(wedge(beta, cap_omega));
  d.primitivity_scale = euclidean_norm(beta) * euclidean_norm(cap_omega);
  d.q_orthogonality = std::abs(q_form(beta, omega_gamma, ctx));
  d.q_orthogonality_scale = euclidean_norm(beta) * euclidean_norm(omega_gamma) *
                            std::max(1.0, euclidean_norm(ctx.omega_cap));
  d.primitive_part = std::move(beta);
  d.lower_part = std::move(gamma);
  return d;
}

std::vector<LevelComponent> iterated_decompose(const Form& a, const HRContext& ctx) {
  check_context_form(a, ctx, "iterated_decompose");
  if (ctx.p <= ctx.q) return iterated_decompose_sorted(a, ctx);
  // Decompose the conjugate, which has p <= q over the same (real) tuple,
  // then conjugate the components back.
  const HRContext swapped = make_context(ctx.n, ctx.q, ctx.p, ctx.kahler_tuple, ctx.convention);
  std::vector<LevelComponent> components = iterated_decompose_sorted(conjugate(a), swapped);
  for (LevelComponent& c : components) c.component = conjugate(c.component);
  return components;
}

Form tilde(const Form& a, const HRContext& ctx) {
  Form out = Form::zero(ctx.n, ctx.p, ctx.q);
  const Form& omega = ctx.last_omega();
  for (const LevelComponent& c : iterated_decompose(a, ctx)) {
    Form term = wedge(c.component, wedge_power(omega, c.omega_exponent));
    if (c.omega_exponent % 2 != 0) term *= -1.0;
    out += term;
  }
  return out;
}

cdouble hr_metric(const Form& a, const Form& b, const HRContext& ctx) {
  return q_form(a, tilde(b, ctx), ctx);
}

CoercivityConstants coercivity_constants(const HRContext& ctx) {
  const int n = ctx.n;
  const PrimitiveSpace space = primitive_basis(ctx);
  const GramReport gram = q_gram(space.basis, ctx.omega_cap, ctx.sign_factor);
  if (gram.verdict != Definiteness::positive_definite)
    throw std::runtime_error("coercivity constants need a positive-definite primitive Gram");

  CoercivityConstants k;
  k.gram_inverse_bound = 1.0 / gram.min_eigenvalue();
  if (ctx.p == 0 || ctx.q == 0) {
    // The whole component is primitive: the splitting is trivial and the
    // wedge term of the inequality vanishes identically.
    k.two_sided_bound = 1.0;
    k.splitting_constant = 1.0;
    k.c_wedge = 0.0;
    k.c_q = k.gram_inverse_bound;
    return k;
  }

  const Form& omega = ctx.last_omega();
  const LevelSplitter splitter(ctx.omega_cap, omega, n, ctx.p, ctx.q);
  const Form cap_omega2 = wedge(splitter.cap_omega, omega);
  const int lift = cap_omega2.p;
  const ComplexMatrix t =
      operator_matrix([&cap_omega2](const Form& f) { return wedge(f, cap_omega2); }, n, ctx.p - 1,
                      ctx.q - 1, ctx.p - 1 + lift, ctx.q - 1 + lift);

  // Operator norms in the Euclidean form norm: coefficient singular values
  // carry a 2^{(deg_out - deg_in)/2} conversion.
  const double t_scale = std::pow(2.0, n - ctx.p - ctx.q + 2);
  const double t_max = operator_norm(t) * t_scale;
  const double t_min = smallest_singular_value(t) * t_scale;
  if (t_min <= 0.0) throw std::runtime_error("coercivity constants: level map is singular");

  const ComplexMatrix w_matrix =
      operator_matrix([&omega](const Form& f) { return wedge(omega, f); }, n, ctx.p - 1, ctx.q - 1,
                      ctx.p, ctx.q);
  const double w_norm = operator_norm(w_matrix) * 2.0;

  // C also dominates the omega-wedge operator so that the Q-cross term
  // |Q(omega^gamma, omega^gamma)| <= C^2 ||gamma||^2 is covered.
  k.two_sided_bound = std::max({t_max, 1.0 / t_min, w_norm});

  // Splitting operator S: a (unit form norm) -> (beta coords, gamma coords).
  const int dim_total = static_cast<int>(binomial(n, ctx.p) * binomial(n, ctx.q));
  const int dim_lower = static_cast<int>(binomial(n, ctx.p - 1) * binomial(n, ctx.q - 1));
  const double domain_unit = std::pow(2.0, -0.5 * (ctx.p + ctx.q));
  const double gamma_unit = std::pow(2.0, 0.5 * (ctx.p + ctx.q - 2));
  ComplexMatrix s(space.dim() + dim_lower, dim_total);
  const auto monomials = enumerate_basis(n, ctx.p, ctx.q);
  for (int col = 0; col < dim_total; ++col) {
    const Form e = Form::monomial(n, monomials[col].holo, monomials[col].anti, domain_unit);
    auto [beta, gamma] = splitter.split(e, omega);
    for (int i = 0; i < space.dim(); ++i) s(i, col) = euclidean_inner(beta, space.basis[i]);
    for (int i = 0; i < dim_lower; ++i) s(space.dim() + i, col) = gamma.coeffs[i] * gamma_unit;
  }
  const double sigma_min = smallest_singular_value(s);
  if (sigma_min <= 0.0) throw std::runtime_error("coercivity constants: splitting is degenerate");
  k.splitting_constant = 1.0 / (sigma_min * sigma_min);

  const double c2 = k.two_sided_bound * k.two_sided_bound;
  k.c_q = k.splitting_constant * k.gram_inverse_bound;
  k.c_wedge = k.splitting_constant * k.gram_inverse_bound * c2 * c2 + k.splitting_constant * c2;
  return k;
}

CoercivityCheck verify_coercivity(const HRContext& ctx, const CoercivityConstants& constants,
                                  int trials, std::uint64_t seed, double slack) {
  if (trials < 1) throw std::invalid_argument("verify_coercivity: trials must be positive");
  const Form cap_omega = wedge(ctx.omega_cap, ctx.last_omega());
  CoercivityCheck check;
  check.trials = trials;
  check.worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    const Form a = random_form(ctx.n, ctx.p, ctx.q, rng);
    const double norm2 = std::pow(euclidean_norm(a), 2);
    if (norm2 == 0.0) continue;
    const double wedge_norm = euclidean_norm(wedge(a, cap_omega));
    const double lhs = constants.c_wedge * wedge_norm * wedge_norm +
                       constants.c_q * q_form(a, a, ctx).real();
    const double margin = (lhs - norm2) / norm2;
    check.worst_margin = std::min(check.worst_margin, margin);
    if (margin < -slack) ++check.violations;
  }
  check.pass = check.violations == 0;
  return check;
}

DecompositionCheck check_lefschetz_decomposition(const HRContext& ctx) {
  const int n = ctx.n;
  DecompositionCheck check;
  const PrimitiveSpace space = primitive_basis(ctx);
  check.dim_total = static_cast<int>(binomial(n, ctx.p) * binomial(n, ctx.q));
  check.dim_primitive = space.dim();
  check.dim_lower = (ctx.p >= 1 && ctx.q >= 1)
                        ? static_cast<int>(binomial(n, ctx.p - 1) * binomial(n, ctx.q - 1))
                        : 0;
  check.dimension_identity = check.dim_primitive + check.dim_lower == check.dim_total;

  ComplexMatrix stacked(check.dim_total, check.dim_primitive + check.dim_lower);
  for (int j = 0; j < check.dim_primitive; ++j) stacked.set_column(j, space.basis[j].coeffs);
  if (check.dim_lower > 0) {
    const Form& omega = ctx.last_omega();
    const auto lower = enumerate_basis(n, ctx.p - 1, ctx.q - 1);
    for (int j = 0; j < check.dim_lower; ++j) {
      const Form lifted = wedge(omega, Form::monomial(n, lower[j].holo, lower[j].anti));
      stacked.set_column(check.dim_primitive + j, lifted.coeffs);
    }
  }
  check.direct_sum = numerical_rank(stacked) == stacked.cols();
  return check;
}

}  // namespace hrv
