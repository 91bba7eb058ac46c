#pragma once
// The mixed Hodge-Riemann machinery in the linear model: the bilinear form
// Q(a,b) = eps * top(a ^ conj(b) ^ Omega) attached to a tuple of strictly
// positive (1,1)-forms, primitive subspaces, Gram verdicts, primitive and
// iterated Lefschetz decompositions, and the quantitative norm-coercivity
// constants behind the positivity proof.

#include <cstdint>
#include <vector>

#include "hrv/forms.hpp"
#include "hrv/kahler.hpp"

namespace hrv {

enum class SignConvention {
  classical,      // i^{p-q} (-1)^{(p+q)(p+q-1)/2}
  paper_printed,  // i^{p-q} (-1)^{(n-p-q)(n-p-q-1)/2}
};

cdouble hodge_riemann_sign(int n, int p, int q, SignConvention convention);

struct HRContext {
  int n = 1;
  int p = 0;
  int q = 0;
  std::vector<Form> kahler_tuple;  // n-p-q+1 strictly positive (1,1)-forms
  Form omega_cap;                  // wedge of the first n-p-q tuple entries
  SignConvention convention = SignConvention::classical;
  cdouble sign_factor = 1.0;

  const Form& last_omega() const { return kahler_tuple.back(); }
};

// Validates arities and strict positivity of every tuple entry.
HRContext make_context(int n, int p, int q, std::vector<Form> kahler_tuple,
                       SignConvention convention = SignConvention::classical);
HRContext make_context(int n, int p, int q, const std::vector<KahlerSpec>& tuple,
                       SignConvention convention = SignConvention::classical);

// Context over a tuple of seeded random Kahler forms; deterministic in seed.
HRContext random_context(int n, int p, int q, std::uint64_t seed,
                         SignConvention convention = SignConvention::classical);

// Q(a,b); linear in a, conjugate-linear in b, Hermitian.
cdouble q_form(const Form& a, const Form& b, const HRContext& ctx);

struct LefschetzReport {
  ComplexMatrix matrix;   // alpha -> alpha ^ Omega, Lambda^{p,q} -> Lambda^{n-q,n-p}
  cdouble determinant;
  double pivot_ratio = 0.0;
  bool singular = true;
};

LefschetzReport lefschetz_map(const HRContext& ctx);

struct PrimitiveSpace {
  int n = 1, p = 0, q = 0;
  std::vector<Form> basis;  // orthonormal in the Euclidean form norm
  int dim() const { return static_cast<int>(basis.size()); }
};

// Kernel of alpha -> alpha ^ Omega ^ omega_last.
PrimitiveSpace primitive_basis(const HRContext& ctx);

enum class Definiteness { positive_definite, semi_definite, indefinite };
const char* to_string(Definiteness verdict);

// Verdict dead band: 1e-9 * max(1, max |eigenvalue|).
Definiteness classify_spectrum(const std::vector<double>& eigenvalues, double rel_tol = 1e-9);

struct GramReport {
  ComplexMatrix gram;
  SpectrumReport spectrum;
  double hermiticity_residual = 0.0;
  Definiteness verdict = Definiteness::positive_definite;

  double min_eigenvalue() const;
  double max_eigenvalue() const;
};

// Gram matrix of Q on an explicit basis (used for primitive spaces and for
// cone probes, where Omega is handed in directly).
GramReport q_gram(const std::vector<Form>& basis, const Form& omega_cap, cdouble sign_factor);
GramReport gram_on_primitive(const HRContext& ctx);

struct PrimitiveDecomposition {
  Form input;
  Form primitive_part;           // beta, primitive
  Form lower_part;               // gamma with input = beta + omega ^ gamma
  double reconstruction_residual = 0.0;
  double primitivity_residual = 0.0;  // ||beta ^ Omega ^ omega||
  double primitivity_scale = 0.0;
  double q_orthogonality = 0.0;       // |Q(beta, omega ^ gamma)|
  double q_orthogonality_scale = 0.0;
};

// a = beta + omega ^ gamma with gamma = T^{-1}(a ^ Omega ^ omega), where
// T gamma = gamma ^ Omega ^ omega^2.  For p = 0 or q = 0 the lower part is
// zero and a itself is primitive.
PrimitiveDecomposition primitive_decompose(const Form& a, const HRContext& ctx);

struct LevelComponent {
  Form component;      // bidegree (j, q-p+j) for p <= q, conjugated otherwise
  int omega_exponent;  // min(p,q) - j
};

// Full iterated decomposition a = sum_j comp_j ^ omega^{e_j}; components
// satisfy comp ^ Omega ^ omega^{2 e + 1} = 0.  min(p,q)+1 terms.
std::vector<LevelComponent> iterated_decompose(const Form& a, const HRContext& ctx);

// Sign-flipped reassembly sum_j (-1)^{e_j} comp_j ^ omega^{e_j}; an involution.
Form tilde(const Form& a, const HRContext& ctx);

// <a,b> = Q(a, tilde(b)); Hermitian positive definite.
cdouble hr_metric(const Form& a, const Form& b, const HRContext& ctx);

struct CoercivityConstants {
  double two_sided_bound = 0.0;    // C: bounds T, T^{-1} and omega ^ . in form norm
  double splitting_constant = 0.0; // C': ||a||^2 <= C' (||beta||^2 + ||gamma||^2)
  double gram_inverse_bound = 0.0; // C'': 1 / min primitive Gram eigenvalue
  double c_wedge = 0.0;            // C' C'' C^4 + C' C^2 (0 when the wedge term is void)
  double c_q = 0.0;                // C' C''
};

// Constants for c_wedge ||a ^ Omega ^ omega||^2 + c_q Re Q(a,a) >= ||a||^2.
CoercivityConstants coercivity_constants(const HRContext& ctx);

struct CoercivityCheck {
  bool pass = false;
  double worst_margin = 0.0;  // min over trials of (lhs - ||a||^2) / ||a||^2
  int violations = 0;
  int trials = 0;
};

CoercivityCheck verify_coercivity(const HRContext& ctx, const CoercivityConstants& constants,
                                  int trials, std::uint64_t seed, double slack = 1e-7);

struct DecompositionCheck {
  int dim_total = 0;
  int dim_primitive = 0;
  int dim_lower = 0;
  bool dimension_identity = false;  // dim P + dim Lambda^{p-1,q-1} = dim Lambda^{p,q}
  bool direct_sum = false;          // stacked basis has full column rank
};

DecompositionCheck check_lefschetz_decomposition(const HRContext& ctx);

}  // namespace hrv
