// Dense symmetric matrix stored as a packed lower triangle.

#pragma once

#include <vector>

#include "pvh/linalg.hpp"

namespace pvh {

class SymMatrix {
 public:
  explicit SymMatrix(int dim = 0);
  static SymMatrix identity(int dim);
  static SymMatrix from_dense(const Mat& m);  // symmetric part (A+Aᵀ)/2

  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  // Symmetric accessors; (i,j) and (j,i) address the same entry.
  double& at(int i, int j);
  double at(int i, int j) const;

  const std::vector<double>& packed() const { return a_; }
  std::vector<double>& packed() { return a_; }

  Mat to_dense() const;
  double max_abs() const;

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

 private:
  int dim_ = 0;
  std::vector<double> a_;  // row-major lower triangle: (i,j), j <= i
};

// Smallest eigenvalue (symmetric tridiagonalization + QL); the workhorse for
// PSD checks on Gram/moment matrices.
double min_eigenvalue(const SymMatrix& m);

}  // namespace pvh
