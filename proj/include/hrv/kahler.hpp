#pragma once
// Hermitian coefficient matrices, the (1,1)-forms they induce, strict
// positivity verdicts, and the seeded random instance generators used by
// the verification campaigns.

#include <string>
#include <vector>

#include "hrv/forms.hpp"
#include "hrv/rng.hpp"

namespace hrv {

// Hermitian n x n matrix; only the lower triangle is stored, so hermiticity
// is exact by construction.  Diagonal imaginary parts are dropped.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(int n);

  static HermitianMatrix identity(int n);
  static HermitianMatrix diagonal(const std::vector<double>& entries);
  // Validates ||m - m^*|| <= tol * max(1, ||m||) and keeps the lower part.
  static HermitianMatrix from_full(const ComplexMatrix& m, double tol = 1e-9);

  int size() const { return n_; }
  cdouble at(int j, int k) const;          // 0-based
  void set(int j, int k, cdouble value);   // writes entry (j,k), j >= k

  ComplexMatrix full() const;
  std::vector<double> eigenvalues() const;
  double determinant_real() const;

 private:
  int n_ = 0;
  std::vector<cdouble> lower_;  // row-major packed lower triangle
};

// omega = (i/2) sum h_jk dz_j ^ dzbar_k.
Form form_from_hermitian(const HermitianMatrix& h);

// Inverse of form_from_hermitian.  Throws for wrong bidegree or when the
// recovered matrix fails hermiticity by more than tol (non-real form).
HermitianMatrix hermitian_from_form(const Form& omega, double tol = 1e-9);

struct PositivityReport {
  bool strict = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

// Strict iff min eigenvalue > 1e-10 * max(1, max eigenvalue).
PositivityReport is_strictly_positive(const Form& omega);

struct KahlerSpec {
  HermitianMatrix h;
  std::string provenance;
  bool certified_strict = false;
};

Form kahler_form(const KahlerSpec& spec);

// h = A A^* + 0.1 I with the entries of A uniform over the complex unit
// square.  Deterministic per (n, seed); certified strictly positive.
KahlerSpec random_kahler(int n, std::uint64_t seed);

// h = A A^* with A of shape n x rank; positive semi-definite, tagged
// non-strict.
KahlerSpec random_psd(int n, int rank, std::uint64_t seed);

// Dense (p,q)-form with coefficients uniform over [-1,1) x [-1,1).
Form random_form(int n, int p, int q, Rng& rng);

}  // namespace hrv
