#pragma once
// Dense complex linear algebra kernel used throughout the project: a cyclic
// Jacobi eigensolver for Hermitian matrices, LU factorization with partial
// pivoting, numerical rank / kernel extraction with full pivoting, and a
// Householder least-squares solver.  All matrices here are small (dimensions
// of exterior-algebra components, at most a few hundred), so dense storage
// and O(n^3) algorithms are the right tool.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hrv {

using cdouble = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cdouble& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const cdouble& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix multiply(const ComplexMatrix& other) const;
  std::vector<cdouble> apply(const std::vector<cdouble>& v) const;
  double frobenius_norm() const;
  double hermiticity_residual() const;  // ||M - M^*||_F, square matrices only

  void set_column(int j, const std::vector<cdouble>& column);
  std::vector<cdouble> column(int j) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cdouble> data_;
};

// Spectrum of a Hermitian matrix computed by cyclic Jacobi rotations.
struct SpectrumReport {
  std::vector<double> eigenvalues;     // ascending
  double off_diagonal_residual = 0.0;  // final off-diagonal Frobenius mass
  int sweeps = 0;
};

// Requires ||m - m^*|| <= hermitian_tol * max(1, ||m||); throws otherwise.
// Off-diagonal mass is driven below 1e-13 * ||m||.
SpectrumReport hermitian_eigenvalues(const ComplexMatrix& m, double hermitian_tol = 1e-9);

struct LuFactors {
  ComplexMatrix lu;           // packed L (unit diagonal) and U
  std::vector<int> pivots;    // row permutation
  int permutation_sign = 1;
  bool singular = false;
  double pivot_ratio = 0.0;   // min |U_ii| / max |U_ii|

  std::vector<cdouble> solve(const std::vector<cdouble>& rhs) const;
  cdouble determinant() const;
};

// Partial-pivoting LU.  The factorization is flagged singular when the
// smallest pivot falls below singular_tol times the largest.
LuFactors lu_factor(const ComplexMatrix& m, double singular_tol = 1e-12);

// Solves m x = rhs; throws std::runtime_error for singular-to-tolerance m.
std::vector<cdouble> solve_linear(const ComplexMatrix& m, const std::vector<cdouble>& rhs);

cdouble determinant(const ComplexMatrix& m);

// Orthonormal basis of the numerical kernel: directions whose elimination
// pivot falls below rank_tol times the largest pivot.  Full pivoting, then
// modified Gram-Schmidt on the back-substituted vectors.
std::vector<std::vector<cdouble>> kernel_basis(const ComplexMatrix& m, double rank_tol = 1e-10);

int numerical_rank(const ComplexMatrix& m, double rank_tol = 1e-10);

// Minimum-residual solution of an overdetermined system via Householder QR
// with column equilibration.  Requires rows >= cols and full column rank.
std::vector<cdouble> least_squares(const ComplexMatrix& a, const std::vector<cdouble>& b);

// Extreme singular values, computed from the Hermitian spectrum of A^* A.
double operator_norm(const ComplexMatrix& m);
double smallest_singular_value(const ComplexMatrix& m);

}  // namespace hrv
