// Dense matrix layer used by the SDP solver and certificate extraction.
//
// Matrices are row-major doubles.  The heavy loops route through the
// runtime-dispatched kernels (see kernels.hpp).  The eigensolver is the
// classical two-stage scheme for dense symmetric matrices: Householder
// reduction to tridiagonal form followed by implicit-shift QL iteration with
// optional eigenvector accumulation.

#pragma once

#include <cstddef>
#include <vector>

namespace pvh {

struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a[i * cols + j];
  }
  double* row(std::size_t i) { return a.data() + i * cols; }
  const double* row(std::size_t i) const { return a.data() + i * cols; }

  static Mat identity(std::size_t n);
};

Mat transpose(const Mat& m);

// c += a*b (dimensions must agree).
void matmul_acc(Mat& c, const Mat& a, const Mat& b);
Mat matmul(const Mat& a, const Mat& b);

// Frobenius norm and entrywise max-abs.
double fro_norm(const Mat& m);
double max_abs(const Mat& m);

// In-place Cholesky A = L·Lᵀ of the lower triangle (upper triangle zeroed).
// Returns false when a pivot drops below `min_pivot`.
bool cholesky(Mat& a, double min_pivot = 0.0);

// Solve L·Lᵀ x = b in place given the factor from cholesky().
void chol_solve(const Mat& l, std::vector<double>& b);

// B ← L⁻¹ B (forward substitution on every column, row-sweep order).
void trsm_left_lower(const Mat& l, Mat& b);

// Inverse of A = L·Lᵀ from its Cholesky factor.
Mat chol_inverse(const Mat& l);

// Full symmetric eigendecomposition.  values come out ascending; vectors (if
// requested) are the corresponding orthonormal eigenvectors in the columns.
struct EigResult {
  std::vector<double> values;
  Mat vectors;  // empty when vectors were not requested
};
EigResult sym_eig(const Mat& a, bool want_vectors);

// Smallest eigenvalue of symmetric a (values-only QL pass).
double sym_eig_min(const Mat& a);

}  // namespace pvh
