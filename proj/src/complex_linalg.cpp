#include "hrv/complex_linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hrv {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::multiply(const ComplexMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
  ComplexMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cdouble a = (*this)(i, k);
      if (a == cdouble(0.0)) continue;
      for (int j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

std::vector<cdouble> ComplexMatrix::apply(const std::vector<cdouble>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("matrix apply shape mismatch");
  std::vector<cdouble> out(rows_);
  for (int i = 0; i < rows_; ++i) {
    cdouble s = 0.0;
    for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cdouble& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_residual() const {
  if (rows_ != cols_) throw std::invalid_argument("hermiticity residual needs a square matrix");
  double s = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
  return std::sqrt(s);
}

void ComplexMatrix::set_column(int j, const std::vector<cdouble>& column) {
  if (static_cast<int>(column.size()) != rows_) throw std::invalid_argument("column size mismatch");
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = column[i];
}

std::vector<cdouble> ComplexMatrix::column(int j) const {
  std::vector<cdouble> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

SpectrumReport hermitian_eigenvalues(const ComplexMatrix& m, double hermitian_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigensolver needs a square matrix");
  const int n = m.rows();
  SpectrumReport report;
  if (n == 0) return report;

  const double scale = m.frobenius_norm();
  if (m.hermiticity_residual() > hermitian_tol * std::max(1.0, scale))
    throw std::invalid_argument("matrix is not Hermitian to tolerance");

  // Work on the exact Hermitian average; rounding in the caller must not
  // leak into the rotation formulas.
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

  const double target = 1e-13 * std::max(scale, 1e-300);
  const int max_sweeps = 60;
  int sweeps = 0;
  while (sweeps < max_sweeps && off_diagonal_mass(a) > target) {
    ++sweeps;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cdouble apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Phase that makes the (p,q) entry real, then a standard real
        // Jacobi rotation on the 2x2 block.
        const cdouble u = std::conj(apq) / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Combined unitary G: columns p,q mix as
        //   col_p' = c * col_p - conj(u) s * col_q ... expressed below via u.
        // Applied as A <- G^* A G, using hermiticity to update both sides.
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cdouble akp = a(k, p);
          const cdouble akq = a(k, q);
          a(k, p) = c * akp - (u * s) * akq;
          a(k, q) = s * akp + (u * c) * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  report.sweeps = sweeps;
  report.off_diagonal_residual = off_diagonal_mass(a);
  report.eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) report.eigenvalues[i] = a(i, i).real();
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end());
  return report;
}

LuFactors lu_factor(const ComplexMatrix& m, double singular_tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("LU factorization needs a square matrix");
  const int n = m.rows();
  LuFactors f;
  f.lu = m;
  f.pivots.resize(n);
  for (int i = 0; i < n; ++i) f.pivots[i] = i;

  for (int k = 0; k < n; ++k) {
    int pivot_row = k;
    double best = std::abs(f.lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        pivot_row = i;
      }
    }
    if (pivot_row != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(pivot_row, j));
      std::swap(f.pivots[k], f.pivots[pivot_row]);
      f.permutation_sign = -f.permutation_sign;
    }
    const cdouble pivot = f.lu(k, k);
    if (std::abs(pivot) == 0.0) continue;
    for (int i = k + 1; i < n; ++i) {
      const cdouble factor = f.lu(i, k) / pivot;
      f.lu(i, k) = factor;
      if (factor == cdouble(0.0)) continue;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= factor * f.lu(k, j);
    }
  }

  double min_p = 0.0, max_p = 0.0;
  for (int k = 0; k < n; ++k) {
    const double v = std::abs(f.lu(k, k));
    if (k == 0) {
      min_p = max_p = v;
    } else {
      min_p = std::min(min_p, v);
      max_p = std::max(max_p, v);
    }
  }
  f.pivot_ratio = (max_p > 0.0) ? min_p / max_p : 0.0;
  f.singular = (n > 0) && (max_p == 0.0 || min_p < singular_tol * max_p);
  return f;
}

std::vector<cdouble> LuFactors::solve(const std::vector<cdouble>& rhs) const {
  const int n = lu.rows();
  if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("rhs size mismatch");
  std::vector<cdouble> x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[pivots[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
    x[i] /= lu(i, i);
  }
  return x;
}

cdouble LuFactors::determinant() const {
  cdouble det = static_cast<double>(permutation_sign);
  for (int i = 0; i < lu.rows(); ++i) det *= lu(i, i);
  return det;
}

std::vector<cdouble> solve_linear(const ComplexMatrix& m, const std::vector<cdouble>& rhs) {
  LuFactors f = lu_factor(m);
  if (f.singular) throw std::runtime_error("solve_linear: matrix is singular to tolerance");
  return f.solve(rhs);
}

cdouble determinant(const ComplexMatrix& m) { return lu_factor(m).determinant(); }

namespace {

// Full-pivot row echelon shared by kernel_basis and numerical_rank.
struct Echelon {
  ComplexMatrix a;
  std::vector<int> col_perm;  // working column j holds original column col_perm[j]
  int rank = 0;
};

Echelon eliminate(const ComplexMatrix& m, double rank_tol) {
  Echelon e;
  e.a = m;
  const int rows = m.rows();
  const int cols = m.cols();
  e.col_perm.resize(cols);
  for (int j = 0; j < cols; ++j) e.col_perm[j] = j;

  double largest_pivot = 0.0;
  const int steps = std::min(rows, cols);
  for (int k = 0; k < steps; ++k) {
    int pi = k, pj = k;
    double best = 0.0;
    for (int i = k; i < rows; ++i) {
      for (int j = k; j < cols; ++j) {
        const double v = std::abs(e.a(i, j));
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    if (k == 0) largest_pivot = best;
    if (best == 0.0 || best < rank_tol * largest_pivot) break;
    if (pi != k)
      for (int j = 0; j < cols; ++j) std::swap(e.a(k, j), e.a(pi, j));
    if (pj != k) {
      for (int i = 0; i < rows; ++i) std::swap(e.a(i, k), e.a(i, pj));
      std::swap(e.col_perm[k], e.col_perm[pj]);
    }
    const cdouble pivot = e.a(k, k);
    for (int i = k + 1; i < rows; ++i) {
      const cdouble factor = e.a(i, k) / pivot;
      if (factor == cdouble(0.0)) continue;
      for (int j = k; j < cols; ++j) e.a(i, j) -= factor * e.a(k, j);
    }
    e.rank = k + 1;
  }
  return e;
}

}  // namespace

std::vector<std::vector<cdouble>> kernel_basis(const ComplexMatrix& m, double rank_tol) {
  const int cols = m.cols();
  const Echelon e = (m.rows() == 0) ? Echelon{ComplexMatrix(0, cols), {}, 0} : eliminate(m, rank_tol);
  std::vector<int> col_perm = e.col_perm;
  if (col_perm.empty()) {
    col_perm.resize(cols);
    for (int j = 0; j < cols; ++j) col_perm[j] = j;
  }
  const int rank = e.rank;

  std::vector<std::vector<cdouble>> basis;
  for (int free_col = rank; free_col < cols; ++free_col) {
    // Back-substitute U[0:rank,0:rank] x = -U[0:rank, free_col].
    std::vector<cdouble> x(rank);
    for (int i = rank - 1; i >= 0; --i) {
      cdouble s = -e.a(i, free_col);
      for (int j = i + 1; j < rank; ++j) s -= e.a(i, j) * x[j];
      x[i] = s / e.a(i, i);
    }
    std::vector<cdouble> v(cols, 0.0);
    for (int j = 0; j < rank; ++j) v[col_perm[j]] = x[j];
    v[col_perm[free_col]] = 1.0;
    basis.push_back(std::move(v));
  }

  // Modified Gram-Schmidt with one re-orthogonalization pass.
  for (size_t i = 0; i < basis.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t j = 0; j < i; ++j) {
        cdouble proj = 0.0;
        for (int k = 0; k < cols; ++k) proj += std::conj(basis[j][k]) * basis[i][k];
        for (int k = 0; k < cols; ++k) basis[i][k] -= proj * basis[j][k];
      }
    }
    double norm = 0.0;
    for (int k = 0; k < cols; ++k) norm += std::norm(basis[i][k]);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::runtime_error("kernel_basis: degenerate direction");
    for (int k = 0; k < cols; ++k) basis[i][k] /= norm;
  }
  return basis;
}

int numerical_rank(const ComplexMatrix& m, double rank_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return eliminate(m, rank_tol).rank;
}

std::vector<cdouble> least_squares(const ComplexMatrix& a, const std::vector<cdouble>& b) {
  const int rows = a.rows();
  const int cols = a.cols();
  if (rows < cols) throw std::invalid_argument("least_squares needs rows >= cols");
  if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("rhs size mismatch");

  // Column equilibration keeps the Vandermonde-like systems from the
  // volume-interpolation path well scaled.
  ComplexMatrix r = a;
  std::vector<double> col_scale(cols, 1.0);
  for (int j = 0; j < cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < rows; ++i) s += std::norm(r(i, j));
    s = std::sqrt(s);
    if (s > 0.0) {
      col_scale[j] = s;
      for (int i = 0; i < rows; ++i) r(i, j) /= s;
    }
  }

  std::vector<cdouble> rhs = b;
  for (int k = 0; k < cols; ++k) {
    // Householder reflector for column k.
    double sigma = 0.0;
    for (int i = k; i < rows; ++i) sigma += std::norm(r(i, k));
    sigma = std::sqrt(sigma);
    if (sigma == 0.0) throw std::runtime_error("least_squares: rank-deficient system");
    const cdouble rkk = r(k, k);
    const cdouble phase = (std::abs(rkk) > 0.0) ? rkk / std::abs(rkk) : cdouble(1.0);
    const cdouble alpha = -phase * sigma;
    std::vector<cdouble> v(rows - k);
    v[0] = rkk - alpha;
    for (int i = k + 1; i < rows; ++i) v[i - k] = r(i, k);
    double vnorm2 = 0.0;
    for (const cdouble& z : v) vnorm2 += std::norm(z);
    if (vnorm2 == 0.0) continue;
    for (int j = k; j < cols; ++j) {
      cdouble dot = 0.0;
      for (int i = k; i < rows; ++i) dot += std::conj(v[i - k]) * r(i, j);
      const cdouble f = 2.0 * dot / vnorm2;
      for (int i = k; i < rows; ++i) r(i, j) -= f * v[i - k];
    }
    cdouble dot = 0.0;
    for (int i = k; i < rows; ++i) dot += std::conj(v[i - k]) * rhs[i];
    const cdouble f = 2.0 * dot / vnorm2;
    for (int i = k; i < rows; ++i) rhs[i] -= f * v[i - k];
  }

  std::vector<cdouble> x(cols);
  for (int i = cols - 1; i >= 0; --i) {
    cdouble s = rhs[i];
    for (int j = i + 1; j < cols; ++j) s -= r(i, j) * x[j];
    x[i] = s / r(i, i);
  }
  for (int j = 0; j < cols; ++j) x[j] /= col_scale[j];
  return x;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const ComplexMatrix gram = m.adjoint().multiply(m);
  const SpectrumReport s = hermitian_eigenvalues(gram);
  const double top = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.back();
  return std::sqrt(std::max(0.0, top));
}

double smallest_singular_value(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const ComplexMatrix gram = m.adjoint().multiply(m);
  const SpectrumReport s = hermitian_eigenvalues(gram);
  const double bottom = s.eigenvalues.empty() ? 0.0 : s.eigenvalues.front();
  return std::sqrt(std::max(0.0, bottom));
}

}  // namespace hrv
