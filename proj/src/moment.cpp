#include "pvh/moment.hpp"

#include <cmath>
#include <stdexcept>

#include "pvh/sym_matrix.hpp"

namespace pvh {

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 0) throw std::invalid_argument("SymMatrix: negative dimension");
  a_.assign(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0);
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

SymMatrix SymMatrix::from_dense(const Mat& m) {
  if (m.rows != m.cols)
    throw std::invalid_argument("SymMatrix::from_dense: not square");
  SymMatrix s(static_cast<int>(m.rows));
  for (int i = 0; i < s.dim_; ++i)
    for (int j = 0; j <= i; ++j)
      s.at(i, j) = 0.5 * (m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +
                          m(static_cast<std::size_t>(j), static_cast<std::size_t>(i)));
  return s;
}

double& SymMatrix::at(int i, int j) {
  if (i < j) std::swap(i, j);
  return a_[static_cast<std::size_t>(i) * (i + 1) / 2 + j];
}

double SymMatrix::at(int i, int j) const {
  if (i < j) std::swap(i, j);
  return a_[static_cast<std::size_t>(i) * (i + 1) / 2 + j];
}

Mat SymMatrix::to_dense() const {
  Mat m(static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j <= i; ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          m(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = at(i, j);
  return m;
}

double SymMatrix::max_abs() const {
  double v = 0.0;
  for (double x : a_) v = std::max(v, std::fabs(x));
  return v;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  if (o.dim_ != dim_)
    throw std::invalid_argument("SymMatrix +: dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

double min_eigenvalue(const SymMatrix& m) {
  if (m.dim() < 1) throw std::invalid_argument("min_eigenvalue: empty matrix");
  return sym_eig_min(m.to_dense());
}

// ---------------------------------------------------------------------------
// MomentVector

MomentVector::MomentVector(int n, int deg)
    : nvars(n), max_deg(deg), index_(MonomialIndex::up_to(n, deg)) {
  y.assign(static_cast<std::size_t>(index_.size()), 0.0);
}

double MomentVector::moment(const Monomial& m) const {
  const int i = index_.find(m);
  if (i < 0)
    throw std::invalid_argument("MomentVector: monomial " + m.str() +
                                " outside degree range");
  return y[static_cast<std::size_t>(i)];
}

void MomentVector::set_moment(const Monomial& m, double v) {
  const int i = index_.find(m);
  if (i < 0)
    throw std::invalid_argument("MomentVector: monomial " + m.str() +
                                " outside degree range");
  y[static_cast<std::size_t>(i)] = v;
}

MomentVector MomentVector::dirac(const std::vector<double>& x, int max_deg) {
  MomentVector mv(static_cast<int>(x.size()), max_deg);
  for (int i = 0; i < mv.index_.size(); ++i) {
    double v = 1.0;
    const Monomial& m = mv.index_.at(i);
    for (std::size_t j = 0; j < x.size(); ++j)
      for (int k = 0; k < m.e[j]; ++k) v *= x[j];
    mv.y[static_cast<std::size_t>(i)] = v;
  }
  return mv;
}

double riesz(const MomentVector& y, const Polynomial& p) {
  if (p.nvars() != y.nvars)
    throw std::invalid_argument("riesz: variable count mismatch");
  if (p.degree() > y.max_deg)
    throw std::invalid_argument("riesz: polynomial degree exceeds moment range");
  double acc = 0.0;
  for (const auto& [m, c] : p.terms()) acc += c * y.moment(m);
  return acc;
}

SymMatrix moment_matrix(const MomentVector& y, int t) {
  if (t < 0) throw std::invalid_argument("moment_matrix: negative order");
  if (2 * t > y.max_deg)
    throw std::invalid_argument("moment_matrix: order exceeds moment range");
  const auto basis = monomials_up_to(y.nvars, t);
  SymMatrix m(static_cast<int>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m.at(static_cast<int>(i), static_cast<int>(j)) =
          y.moment(basis[i] * basis[j]);
  return m;
}

SymMatrix localizing_matrix(const MomentVector& y, const Polynomial& g,
                            int t) {
  if (t < 0) throw std::invalid_argument("localizing_matrix: negative order");
  if (g.nvars() != y.nvars)
    throw std::invalid_argument("localizing_matrix: variable count mismatch");
  if (2 * t + std::max(0, g.degree()) > y.max_deg)
    throw std::invalid_argument(
        "localizing_matrix: order + constraint degree exceeds moment range");
  const auto basis = monomials_up_to(y.nvars, t);
  SymMatrix m(static_cast<int>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Monomial prod = basis[i] * basis[j];
      double acc = 0.0;
      for (const auto& [mg, cg] : g.terms()) acc += cg * y.moment(prod * mg);
      m.at(static_cast<int>(i), static_cast<int>(j)) = acc;
    }
  return m;
}

}  // namespace pvh
