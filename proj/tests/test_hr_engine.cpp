#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hrv/hr_engine.hpp"
#include "hrv/rng.hpp"
#include "real_form_oracle.hpp"

using hrv::cdouble;
using hrv::Form;
using hrv::HRContext;
using hrv::KahlerSpec;
using hrv::Rng;
using hrv::SignConvention;

namespace {

cdouble unit_i_power(int k) {
  static const cdouble table[4] = {1.0, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return table[((k % 4) + 4) % 4];
}

// Classical normalization, recomputed locally so the engine table is not
// trusted for its own test.
cdouble local_sign(int p, int q) {
  const int d = p + q;
  cdouble s = unit_i_power(p - q);
  if ((d * (d - 1) / 2) % 2 != 0) s = -s;
  return s;
}

// Q evaluated entirely in the real-generator algebra.
cdouble oracle_q(const Form& a, const Form& b, const HRContext& ctx) {
  oracle::RealForm acc = oracle::wedge(oracle::from_form(a),
                                       oracle::conjugate(oracle::from_form(b)));
  for (int i = 0; i + ctx.p + ctx.q < ctx.n; ++i)
    acc = oracle::wedge(acc, oracle::from_form(ctx.kahler_tuple[i]));
  return ctx.sign_factor * oracle::top(acc);
}

std::vector<KahlerSpec> identity_tuple(int n, int length) {
  return std::vector<KahlerSpec>(
      length, KahlerSpec{hrv::HermitianMatrix::identity(n), "identity", true});
}

}  // namespace

TEST_CASE("sign table values") {
  using hrv::hodge_riemann_sign;
  CHECK(hodge_riemann_sign(2, 1, 1, SignConvention::classical) == cdouble(-1.0));
  CHECK(hodge_riemann_sign(2, 2, 0, SignConvention::classical) == cdouble(1.0));
  CHECK(hodge_riemann_sign(1, 0, 1, SignConvention::classical) == cdouble(0.0, -1.0));
  CHECK(hodge_riemann_sign(1, 1, 0, SignConvention::classical) == cdouble(0.0, 1.0));
  CHECK(hodge_riemann_sign(2, 0, 0, SignConvention::classical) == cdouble(1.0));
  // The printed variant replaces p+q by n-p-q in the parity factor; the two
  // split exactly at (n,p,q) = (2,0,0).
  CHECK(hodge_riemann_sign(2, 0, 0, SignConvention::paper_printed) == cdouble(-1.0));
  CHECK(hodge_riemann_sign(2, 1, 1, SignConvention::paper_printed) == cdouble(1.0));
  for (int n = 1; n <= 5; ++n)
    for (int p = 0; p + 0 <= n; ++p)
      for (int q = 0; p + q <= n; ++q) {
        CHECK(hodge_riemann_sign(n, p, q, SignConvention::classical) == local_sign(p, q));
        CHECK(std::abs(std::abs(hodge_riemann_sign(n, p, q, SignConvention::paper_printed)) -
                       1.0) < 1e-15);
      }
}

TEST_CASE("context construction validates shape and positivity") {
  CHECK_THROWS_AS(hrv::make_context(2, 1, 1, identity_tuple(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(hrv::make_context(0, 0, 0, identity_tuple(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(hrv::make_context(2, 2, 1, identity_tuple(2, 0)), std::invalid_argument);
  std::vector<KahlerSpec> bad = identity_tuple(2, 2);
  bad[1].h = hrv::HermitianMatrix::diagonal({1.0, -1.0});
  CHECK_THROWS_AS(hrv::make_context(2, 1, 0, bad), std::invalid_argument);
  const HRContext ctx = hrv::make_context(3, 1, 1, identity_tuple(3, 2));
  CHECK(ctx.omega_cap.p == 1);
  CHECK(ctx.omega_cap.q == 1);
  CHECK(ctx.sign_factor == cdouble(-1.0));
}

TEST_CASE("random_context is deterministic in its seed") {
  const HRContext a = hrv::random_context(3, 1, 1, 99);
  const HRContext b = hrv::random_context(3, 1, 1, 99);
  for (size_t i = 0; i < a.kahler_tuple.size(); ++i)
    for (int k = 0; k < a.kahler_tuple[i].dim(); ++k)
      CHECK(a.kahler_tuple[i].coeffs[k] == b.kahler_tuple[i].coeffs[k]);
}

TEST_CASE("hand values of Q on the standard structure") {
  // (1,1) on C^2, single identity factor.
  const HRContext mid = hrv::make_context(2, 1, 1, identity_tuple(2, 1));
  const Form off = Form::monomial(2, {1}, {2});
  CHECK(std::abs(hrv::q_form(off, off, mid) - cdouble(4.0)) < 1e-12);
  // (0,0) on C^2, three identity factors.
  const HRContext scalars = hrv::make_context(2, 0, 0, identity_tuple(2, 3));
  const Form one = Form::constant(2, 1.0);
  CHECK(std::abs(hrv::q_form(one, one, scalars) - cdouble(2.0)) < 1e-12);
  // (2,0) on C^2.
  const HRContext holo2 = hrv::make_context(2, 2, 0, identity_tuple(2, 1));
  const Form vol_holo = Form::monomial(2, {1, 2}, {});
  CHECK(std::abs(hrv::q_form(vol_holo, vol_holo, holo2) - cdouble(4.0)) < 1e-12);
  // (0,1) on the line.
  const HRContext anti = hrv::make_context(1, 0, 1, identity_tuple(1, 1));
  const Form bar = Form::monomial(1, {}, {1});
  CHECK(std::abs(hrv::q_form(bar, bar, anti) - cdouble(2.0)) < 1e-12);
  // (n,0): the full holomorphic volume pairs to 2^n.
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> all(n);
    for (int j = 0; j < n; ++j) all[j] = j + 1;
    const HRContext top = hrv::make_context(n, n, 0, identity_tuple(n, 1));
    const Form f = Form::monomial(n, all, {});
    CHECK(std::abs(hrv::q_form(f, f, top) - cdouble(std::pow(2.0, n))) < 1e-12);
  }
}

TEST_CASE("Q agrees with the real-generator oracle on random instances") {
  for (const auto& [n, p, q] : {std::tuple{2, 1, 1}, {2, 1, 0}, {2, 0, 0}, {3, 1, 1},
                                {3, 2, 1}, {3, 1, 2}, {3, 0, 2}, {3, 3, 0}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(500, n, p, q));
    Rng rng(hrv::mix_seed(501, n, p, q));
    const Form a = hrv::random_form(n, p, q, rng);
    const Form b = hrv::random_form(n, p, q, rng);
    const cdouble engine = hrv::q_form(a, b, ctx);
    const cdouble reference = oracle_q(a, b, ctx);
    CHECK(std::abs(engine - reference) < 1e-11 * std::max(1.0, std::abs(reference)));
  }
}

TEST_CASE("Q is hermitian and sesquilinear") {
  const HRContext ctx = hrv::random_context(3, 1, 1, 811);
  Rng rng(813);
  const Form a = hrv::random_form(3, 1, 1, rng);
  const Form b = hrv::random_form(3, 1, 1, rng);
  const Form c = hrv::random_form(3, 1, 1, rng);
  CHECK(std::abs(hrv::q_form(a, b, ctx) - std::conj(hrv::q_form(b, a, ctx))) < 1e-12);
  const cdouble s(0.7, -0.3);
  CHECK(std::abs(hrv::q_form(s * a + b, c, ctx) -
                 (s * hrv::q_form(a, c, ctx) + hrv::q_form(b, c, ctx))) < 1e-12);
  CHECK(std::abs(hrv::q_form(a, s * b, ctx) - std::conj(s) * hrv::q_form(a, b, ctx)) < 1e-12);
}

TEST_CASE("convention choice scales Q by the ratio of sign factors") {
  const HRContext classical = hrv::random_context(2, 0, 0, 821, SignConvention::classical);
  const HRContext printed = hrv::random_context(2, 0, 0, 821, SignConvention::paper_printed);
  const Form one = Form::constant(2, 1.0);
  CHECK(std::abs(hrv::q_form(one, one, classical) + hrv::q_form(one, one, printed)) < 1e-12);
}

TEST_CASE("lefschetz map is the wedge with the cap and is invertible") {
  for (const auto& [n, p, q] : {std::tuple{3, 1, 1}, {4, 1, 2}, {4, 2, 2}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(830, n, p, q));
    const auto report = hrv::lefschetz_map(ctx);
    CHECK_FALSE(report.singular);
    CHECK(report.pivot_ratio > 1e-10);
    CHECK(std::abs(report.determinant) > 0.0);
    Rng rng(hrv::mix_seed(831, n, p, q));
    const Form a = hrv::random_form(n, p, q, rng);
    const auto image = report.matrix.apply(hrv::form_coefficients(a));
    const Form direct = hrv::wedge(a, ctx.omega_cap);
    for (size_t k = 0; k < image.size(); ++k)
      CHECK(std::abs(image[k] - direct.coeffs[k]) < 1e-12);
  }
}

TEST_CASE("primitive basis is orthonormal and annihilated one step past the cap") {
  for (const auto& [n, p, q] : {std::tuple{2, 1, 1}, {3, 1, 1}, {3, 2, 1}, {4, 2, 2}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(840, n, p, q));
    const auto prim = hrv::primitive_basis(ctx);
    const long long expected =
        hrv::binomial(n, p) * hrv::binomial(n, q) -
        (p >= 1 && q >= 1 ? hrv::binomial(n, p - 1) * hrv::binomial(n, q - 1) : 0);
    CHECK(prim.dim() == expected);
    Form killer = ctx.omega_cap;
    killer = hrv::wedge(killer, ctx.last_omega());
    for (int i = 0; i < prim.dim(); ++i) {
      CHECK(hrv::euclidean_norm(prim.basis[i]) == doctest::Approx(1.0).epsilon(1e-10));
      const Form image = hrv::wedge(prim.basis[i], killer);
      CHECK(hrv::euclidean_norm(image) < 1e-9 * hrv::euclidean_norm(killer));
      for (int j = 0; j < i; ++j)
        CHECK(std::abs(hrv::euclidean_inner(prim.basis[i], prim.basis[j])) < 1e-10);
    }
  }
}

TEST_CASE("holomorphic-degree-zero spaces are entirely primitive") {
  const HRContext ctx = hrv::random_context(3, 0, 2, 851);
  const auto prim = hrv::primitive_basis(ctx);
  CHECK(prim.dim() == 3);
}

TEST_CASE("primitive (1,1)-space of the standard structure on C^2") {
  const HRContext ctx = hrv::make_context(2, 1, 1, identity_tuple(2, 1));
  const auto prim = hrv::primitive_basis(ctx);
  REQUIRE(prim.dim() == 3);
  // Basis order (1,1),(1,2),(2,1),(2,2): primitivity against the identity
  // structure is a vanishing coefficient trace.
  for (const auto& b : prim.basis) CHECK(std::abs(b.coeffs[0] + b.coeffs[3]) < 1e-12);
  // Q restricted to this primitive space equals the Euclidean inner product,
  // so the Gram matrix is the identity in any orthonormal basis.
  const auto gram = hrv::gram_on_primitive(ctx);
  CHECK(gram.verdict == hrv::Definiteness::positive_definite);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(gram.gram(i, j) - (i == j ? cdouble(1.0) : cdouble(0.0))) < 1e-12);
}

TEST_CASE("gram verdicts are positive definite across random instances") {
  for (const auto& [n, p, q] :
       {std::tuple{2, 1, 1}, {3, 1, 1}, {3, 1, 2}, {4, 2, 1}, {4, 2, 2}, {4, 0, 3}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(860, n, p, q));
    const auto gram = hrv::gram_on_primitive(ctx);
    CHECK(gram.verdict == hrv::Definiteness::positive_definite);
    CHECK(gram.min_eigenvalue() > 0.0);
    CHECK(gram.hermiticity_residual < 1e-10);
  }
}

TEST_CASE("spectrum classification bands") {
  using hrv::Definiteness;
  CHECK(hrv::classify_spectrum({0.5, 2.0}) == Definiteness::positive_definite);
  CHECK(hrv::classify_spectrum({1e-12, 1.0}) == Definiteness::semi_definite);
  CHECK(hrv::classify_spectrum({-1.0, 1.0}) == Definiteness::indefinite);
  CHECK(hrv::classify_spectrum({-1e-12, 5.0}) == Definiteness::semi_definite);
  CHECK(hrv::classify_spectrum({}) == Definiteness::positive_definite);
  CHECK(std::string(hrv::to_string(Definiteness::indefinite)) == "indefinite");
}

TEST_CASE("q_gram entries are the Q values of the handed basis") {
  const HRContext ctx = hrv::random_context(2, 1, 1, 871);
  std::vector<Form> basis = {Form::monomial(2, {1}, {2}), Form::monomial(2, {2}, {1})};
  const auto report = hrv::q_gram(basis, ctx.omega_cap, ctx.sign_factor);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(report.gram(i, j) - hrv::q_form(basis[i], basis[j], ctx)) < 1e-12);
}

TEST_CASE("primitive decomposition splits, annihilates, and Q-orthogonalizes") {
  for (const auto& [n, p, q] : {std::tuple{2, 1, 1}, {3, 1, 1}, {3, 2, 1}, {4, 2, 2}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(880, n, p, q));
    Rng rng(hrv::mix_seed(881, n, p, q));
    const Form a = hrv::random_form(n, p, q, rng);
    const auto dec = hrv::primitive_decompose(a, ctx);
    CHECK(dec.reconstruction_residual < 1e-10);
    CHECK(dec.primitivity_residual < 1e-9 * std::max(1.0, dec.primitivity_scale));
    CHECK(dec.q_orthogonality < 1e-9 * std::max(1.0, dec.q_orthogonality_scale));
    const Form recon = dec.primitive_part + hrv::wedge(ctx.last_omega(), dec.lower_part);
    CHECK(hrv::euclidean_norm(recon - a) < 1e-9 * std::max(1.0, hrv::euclidean_norm(a)));
  }
}

TEST_CASE("primitive decomposition hand values on C^2") {
  const HRContext ctx = hrv::make_context(2, 1, 1, identity_tuple(2, 1));
  const Form a = Form::monomial(2, {1}, {1});
  const auto dec = hrv::primitive_decompose(a, ctx);
  // a = (d11 - d22)/2 + omega ^ (-i) for omega = (i/2)(d11 + d22).
  Form expected_prim = Form::monomial(2, {1}, {1}, 0.5) + Form::monomial(2, {2}, {2}, -0.5);
  CHECK(hrv::euclidean_norm(dec.primitive_part - expected_prim) < 1e-12);
  REQUIRE(dec.lower_part.p == 0);
  CHECK(std::abs(dec.lower_part.coeffs[0] - cdouble(0.0, -1.0)) < 1e-12);
}

TEST_CASE("degenerate bidegrees are their own primitive part") {
  const HRContext ctx = hrv::random_context(3, 0, 1, 891);
  Rng rng(893);
  const Form a = hrv::random_form(3, 0, 1, rng);
  const auto dec = hrv::primitive_decompose(a, ctx);
  CHECK(hrv::euclidean_norm(dec.primitive_part - a) < 1e-13);
  CHECK(dec.lower_part.is_zero());
}

TEST_CASE("iterated decomposition reconstructs with level-wise annihilation") {
  for (const auto& [n, p, q] : {std::tuple{2, 1, 1}, {3, 1, 1}, {4, 2, 2}, {4, 2, 1}, {3, 1, 2}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(900, n, p, q));
    Rng rng(hrv::mix_seed(901, n, p, q));
    const Form a = hrv::random_form(n, p, q, rng);
    const auto levels = hrv::iterated_decompose(a, ctx);
    CHECK(static_cast<int>(levels.size()) == std::min(p, q) + 1);
    Form sum = Form::zero(n, p, q);
    for (const auto& level : levels) {
      sum += hrv::wedge(level.component, hrv::wedge_power(ctx.last_omega(), level.omega_exponent));
      // A level component is primitive for the cap extended by its own
      // omega power twice plus one.
      Form probe = hrv::wedge(level.component, ctx.omega_cap);
      probe = hrv::wedge(probe, hrv::wedge_power(ctx.last_omega(), 2 * level.omega_exponent + 1));
      CHECK(hrv::euclidean_norm(probe) < 1e-8 * std::max(1.0, hrv::euclidean_norm(a)));
    }
    CHECK(hrv::euclidean_norm(sum - a) < 1e-9 * std::max(1.0, hrv::euclidean_norm(a)));
  }
}

TEST_CASE("tilde is an involution fixing primitive forms") {
  const HRContext ctx = hrv::random_context(3, 1, 1, 911);
  Rng rng(913);
  const Form a = hrv::random_form(3, 1, 1, rng);
  const Form twice = hrv::tilde(hrv::tilde(a, ctx), ctx);
  CHECK(hrv::euclidean_norm(twice - a) < 1e-9 * std::max(1.0, hrv::euclidean_norm(a)));
  const auto prim = hrv::primitive_basis(ctx);
  const Form fixed = hrv::tilde(prim.basis[0], ctx);
  CHECK(hrv::euclidean_norm(fixed - prim.basis[0]) < 1e-9);
}

TEST_CASE("the twisted metric is hermitian positive definite") {
  for (const auto& [n, p, q] : {std::tuple{2, 1, 1}, {3, 1, 1}, {4, 2, 1}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(920, n, p, q));
    Rng rng(hrv::mix_seed(921, n, p, q));
    for (int trial = 0; trial < 10; ++trial) {
      const Form a = hrv::random_form(n, p, q, rng);
      const cdouble m = hrv::hr_metric(a, a, ctx);
      CHECK(m.real() > 0.0);
      CHECK(std::abs(m.imag()) < 1e-9 * m.real());
    }
    const Form a = hrv::random_form(n, p, q, rng);
    const Form b = hrv::random_form(n, p, q, rng);
    CHECK(std::abs(hrv::hr_metric(a, b, ctx) - std::conj(hrv::hr_metric(b, a, ctx))) < 1e-9);
    // On primitive forms the twist is trivial, so the metric reduces to Q.
    const auto prim = hrv::primitive_basis(ctx);
    const Form v = prim.basis.back();
    CHECK(std::abs(hrv::hr_metric(v, v, ctx) - hrv::q_form(v, v, ctx)) < 1e-10);
  }
}

TEST_CASE("coercivity constants collapse on degenerate bidegrees") {
  const HRContext ctx = hrv::random_context(3, 0, 2, 931);
  const auto constants = hrv::coercivity_constants(ctx);
  CHECK(constants.two_sided_bound == doctest::Approx(1.0));
  CHECK(constants.splitting_constant == doctest::Approx(1.0));
  CHECK(constants.c_wedge == 0.0);
  CHECK(constants.c_q == doctest::Approx(constants.gram_inverse_bound));
}

TEST_CASE("coercivity holds with the computed constants") {
  for (const auto& [n, p, q] : {std::tuple{2, 1, 1}, {3, 1, 1}, {3, 2, 1}, {4, 2, 2}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(940, n, p, q));
    const auto constants = hrv::coercivity_constants(ctx);
    CHECK(constants.c_q > 0.0);
    const auto check = hrv::verify_coercivity(ctx, constants, 200, 941);
    CHECK(check.pass);
    CHECK(check.violations == 0);
    CHECK(check.worst_margin >= -1e-7);
    const auto again = hrv::verify_coercivity(ctx, constants, 200, 941);
    CHECK(check.worst_margin == again.worst_margin);
  }
}

TEST_CASE("halved constants are falsified on the scaled standard structure") {
  // omega = beta/2 on C^2 keeps the primitive Gram at the identity but puts
  // slack in the splitting bound; halving both constants then fails for a
  // positive fraction of random forms, so the verifier is not vacuous.
  std::vector<KahlerSpec> tuple = {
      KahlerSpec{hrv::HermitianMatrix::diagonal({0.5, 0.5}), "half", true}};
  const HRContext ctx = hrv::make_context(2, 1, 1, tuple);
  auto constants = hrv::coercivity_constants(ctx);
  const auto honest = hrv::verify_coercivity(ctx, constants, 500, 951);
  CHECK(honest.violations == 0);
  constants.c_wedge *= 0.5;
  constants.c_q *= 0.5;
  const auto halved = hrv::verify_coercivity(ctx, constants, 500, 951);
  CHECK(halved.violations > 0);
  CHECK_FALSE(halved.pass);
  CHECK(halved.worst_margin < -1e-7);
}

TEST_CASE("lefschetz decomposition dimensions and direct sum") {
  for (const auto& [n, p, q] : {std::tuple{2, 1, 1}, {3, 1, 1}, {4, 2, 2}, {4, 1, 2}}) {
    const HRContext ctx = hrv::random_context(n, p, q, hrv::mix_seed(960, n, p, q));
    const auto check = hrv::check_lefschetz_decomposition(ctx);
    CHECK(check.dimension_identity);
    CHECK(check.direct_sum);
    CHECK(check.dim_total == check.dim_primitive + check.dim_lower);
    CHECK(check.dim_total == static_cast<int>(hrv::binomial(n, p) * hrv::binomial(n, q)));
  }
}
