#include "hrv/kahler.hpp"

#include <cmath>
#include <stdexcept>

namespace hrv {

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  if (n < 1 || n > kMaxAmbientDimension) throw std::invalid_argument("matrix size out of range");
  lower_.assign(static_cast<size_t>(n) * (n + 1) / 2, 0.0);
}

HermitianMatrix HermitianMatrix::identity(int n) {
  HermitianMatrix m(n);
  for (int j = 0; j < n; ++j) m.set(j, j, 1.0);
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& entries) {
  HermitianMatrix m(static_cast<int>(entries.size()));
  for (size_t j = 0; j < entries.size(); ++j) m.set(static_cast<int>(j), static_cast<int>(j), entries[j]);
  return m;
}

HermitianMatrix HermitianMatrix::from_full(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("from_full needs a square matrix");
  if (m.hermiticity_residual() > tol * std::max(1.0, m.frobenius_norm()))
    throw std::invalid_argument("matrix is not Hermitian to tolerance");
  HermitianMatrix out(m.rows());
  for (int j = 0; j < m.rows(); ++j)
    for (int k = 0; k <= j; ++k) out.set(j, k, m(j, k));
  return out;
}

cdouble HermitianMatrix::at(int j, int k) const {
  if (j < 0 || k < 0 || j >= n_ || k >= n_) throw std::out_of_range("HermitianMatrix::at");
  if (j >= k) return lower_[static_cast<size_t>(j) * (j + 1) / 2 + k];
  return std::conj(lower_[static_cast<size_t>(k) * (k + 1) / 2 + j]);
}

void HermitianMatrix::set(int j, int k, cdouble value) {
  if (j < 0 || k < 0 || j >= n_ || k >= n_) throw std::out_of_range("HermitianMatrix::set");
  if (j < k) throw std::invalid_argument("set writes the lower triangle only");
  if (j == k) value = cdouble(value.real(), 0.0);
  lower_[static_cast<size_t>(j) * (j + 1) / 2 + k] = value;
}

ComplexMatrix HermitianMatrix::full() const {
  ComplexMatrix m(n_, n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) m(j, k) = at(j, k);
  return m;
}

std::vector<double> HermitianMatrix::eigenvalues() const {
  return hermitian_eigenvalues(full()).eigenvalues;
}

double HermitianMatrix::determinant_real() const { return determinant(full()).real(); }

Form form_from_hermitian(const HermitianMatrix& h) {
  const int n = h.size();
  Form omega = Form::zero(n, 1, 1);
  const cdouble half_i(0.0, 0.5);
  // The (1,1) basis is holo-major: monomial dz_{j+1} ^ dzbar_{k+1} sits at j*n+k.
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) omega.coeffs[static_cast<size_t>(j) * n + k] = half_i * h.at(j, k);
  return omega;
}

HermitianMatrix hermitian_from_form(const Form& omega, double tol) {
  if (omega.p != 1 || omega.q != 1) throw std::invalid_argument("expected a (1,1)-form");
  const int n = omega.n;
  // coefficient c_jk = (i/2) h_jk, stored holo-major.
  ComplexMatrix h(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) h(j, k) = cdouble(0.0, -2.0) * omega.coeffs[static_cast<size_t>(j) * n + k];
  return HermitianMatrix::from_full(h, tol);  // throws for non-real forms
}

PositivityReport is_strictly_positive(const Form& omega) {
  const HermitianMatrix h = hermitian_from_form(omega);
  const std::vector<double> eigs = h.eigenvalues();
  PositivityReport report;
  report.min_eigenvalue = eigs.front();
  report.max_eigenvalue = eigs.back();
  report.strict = report.min_eigenvalue > 1e-10 * std::max(1.0, report.max_eigenvalue);
  return report;
}

Form kahler_form(const KahlerSpec& spec) { return form_from_hermitian(spec.h); }

KahlerSpec random_kahler(int n, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x6b61686c6572ull, n));
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.unit_square();
  ComplexMatrix h = a.multiply(a.adjoint());
  for (int i = 0; i < n; ++i) h(i, i) += 0.1;
  KahlerSpec spec;
  spec.h = HermitianMatrix::from_full(h, 1e-12);
  spec.provenance = "random_kahler(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")";
  spec.certified_strict = true;
  return spec;
}

KahlerSpec random_psd(int n, int rank, std::uint64_t seed) {
  if (rank < 0 || rank > n) throw std::invalid_argument("random_psd: rank out of range");
  Rng rng(mix_seed(seed, 0x707364ull, n, rank));
  KahlerSpec spec;
  if (rank == 0) {
    spec.h = HermitianMatrix(n);
  } else {
    ComplexMatrix a(n, rank);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < rank; ++j) a(i, j) = rng.unit_square();
    spec.h = HermitianMatrix::from_full(a.multiply(a.adjoint()), 1e-12);
  }
  spec.provenance = "random_psd(n=" + std::to_string(n) + ",rank=" + std::to_string(rank) +
                    ",seed=" + std::to_string(seed) + ")";
  spec.certified_strict = false;
  return spec;
}

Form random_form(int n, int p, int q, Rng& rng) {
  Form f = Form::zero(n, p, q);
  for (cdouble& c : f.coeffs) c = cdouble(rng.uniform_symmetric(), rng.uniform_symmetric());
  return f;
}

}  // namespace hrv
