#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hrv/kahler.hpp"
#include "real_form_oracle.hpp"

using hrv::cdouble;
using hrv::Form;
using hrv::HermitianMatrix;
using hrv::Rng;

TEST_CASE("hermitian storage keeps the matrix exactly hermitian") {
  HermitianMatrix h(3);
  h.set(2, 0, cdouble(1.0, -2.0));
  h.set(1, 1, cdouble(3.0, 0.5));  // imaginary part of a diagonal entry is dropped
  CHECK(h.at(0, 2) == std::conj(h.at(2, 0)));
  CHECK(h.at(1, 1) == cdouble(3.0, 0.0));
  const auto full = h.full();
  CHECK(full.hermiticity_residual() == 0.0);
}

TEST_CASE("from_full validates hermiticity") {
  hrv::ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 2.0;
  m(0, 1) = cdouble(0.0, 1.0);
  m(1, 0) = cdouble(0.0, -1.0);
  const HermitianMatrix h = HermitianMatrix::from_full(m);
  CHECK(h.at(0, 1) == cdouble(0.0, 1.0));
  m(1, 0) = cdouble(0.5, -1.0);
  CHECK_THROWS_AS(HermitianMatrix::from_full(m), std::invalid_argument);
}

TEST_CASE("diagonal eigenvalues and determinant") {
  const HermitianMatrix h = HermitianMatrix::diagonal({2.0, -1.0, 0.5});
  const auto eigs = h.eigenvalues();
  CHECK(eigs[0] == doctest::Approx(-1.0));
  CHECK(eigs[1] == doctest::Approx(0.5));
  CHECK(eigs[2] == doctest::Approx(2.0));
  CHECK(h.determinant_real() == doctest::Approx(-1.0));
}

TEST_CASE("form_from_hermitian places (i/2) h_jk on dz_j ^ dzbar_k") {
  HermitianMatrix h(2);
  h.set(0, 0, 2.0);
  h.set(1, 0, cdouble(1.0, 1.0));
  const Form omega = hrv::form_from_hermitian(h);
  CHECK(omega.p == 1);
  CHECK(omega.q == 1);
  const auto basis = hrv::enumerate_basis(2, 1, 1);
  for (size_t k = 0; k < basis.size(); ++k) {
    const int j = basis[k].holo[0] - 1, l = basis[k].anti[0] - 1;
    CHECK(std::abs(omega.coeffs[k] - cdouble(0.0, 0.5) * h.at(j, l)) < 1e-15);
  }
  // The induced real form is real-valued: conjugation fixes it.
  const auto real_form = oracle::from_form(omega);
  CHECK(oracle::distance(real_form, oracle::conjugate(real_form)) < 1e-14);
}

TEST_CASE("hermitian_from_form inverts form_from_hermitian") {
  Rng rng(201);
  HermitianMatrix h(3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k <= j; ++k)
      h.set(j, k, j == k ? cdouble(rng.uniform_symmetric())
                         : cdouble(rng.uniform_symmetric(), rng.uniform_symmetric()));
  const HermitianMatrix back = hrv::hermitian_from_form(hrv::form_from_hermitian(h));
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) CHECK(std::abs(back.at(j, k) - h.at(j, k)) < 1e-14);
  CHECK_THROWS_AS(hrv::hermitian_from_form(Form::zero(3, 2, 1)), std::invalid_argument);
  // A non-real (1,1)-form fails the hermiticity gate.
  Form skew = Form::monomial(2, {1}, {2}, 1.0);
  CHECK_THROWS_AS(hrv::hermitian_from_form(skew), std::invalid_argument);
}

TEST_CASE("strict positivity verdicts") {
  CHECK(hrv::is_strictly_positive(hrv::form_from_hermitian(HermitianMatrix::identity(3))).strict);
  const auto psd = hrv::random_psd(3, 2, 11);
  CHECK_FALSE(hrv::is_strictly_positive(hrv::kahler_form(psd)).strict);
  const auto indef = hrv::form_from_hermitian(HermitianMatrix::diagonal({1.0, -1.0}));
  const auto report = hrv::is_strictly_positive(indef);
  CHECK_FALSE(report.strict);
  CHECK(report.min_eigenvalue == doctest::Approx(-1.0));
  CHECK(report.max_eigenvalue == doctest::Approx(1.0));
}

TEST_CASE("random kahler specs are strictly positive and seed-deterministic") {
  for (int n : {1, 3, 5}) {
    const auto spec = hrv::random_kahler(n, 77);
    CHECK(spec.certified_strict);
    CHECK(hrv::is_strictly_positive(hrv::kahler_form(spec)).strict);
    const auto again = hrv::random_kahler(n, 77);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) CHECK(spec.h.at(j, k) == again.h.at(j, k));
    const auto other = hrv::random_kahler(n, 78);
    bool differs = false;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) differs = differs || spec.h.at(j, k) != other.h.at(j, k);
    CHECK(differs);
  }
}

TEST_CASE("random psd matrices have the requested rank") {
  const auto spec = hrv::random_psd(4, 2, 5);
  const auto eigs = spec.h.eigenvalues();
  CHECK(eigs[0] > -1e-12);
  CHECK(eigs[1] > -1e-12);
  CHECK(std::abs(eigs[0]) < 1e-10);
  CHECK(std::abs(eigs[1]) < 1e-10);
  CHECK(eigs[2] > 1e-6);
  CHECK(eigs[3] > 1e-6);
  CHECK_FALSE(spec.certified_strict);
}

TEST_CASE("random_form is dense, seeded, and lands in the requested bidegree") {
  Rng rng_a(303), rng_b(303);
  const Form a = hrv::random_form(3, 2, 1, rng_a);
  const Form b = hrv::random_form(3, 2, 1, rng_b);
  CHECK(a.p == 2);
  CHECK(a.q == 1);
  CHECK(a.dim() == 9);
  for (int k = 0; k < a.dim(); ++k) CHECK(a.coeffs[k] == b.coeffs[k]);
  CHECK_FALSE(a.is_zero(1e-6));
}
