#include "pvh/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "pvh/kernels.hpp"

namespace pvh {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

void matmul_acc(Mat& c, const Mat& a, const Mat& b) {
  if (a.cols != b.rows || c.rows != a.rows || c.cols != b.cols)
    throw std::invalid_argument("matmul_acc: dimension mismatch");
  kernels::gemm_acc(c.a.data(), a.a.data(), b.a.data(), a.rows, a.cols,
                    b.cols);
}

Mat matmul(const Mat& a, const Mat& b) {
  Mat c(a.rows, b.cols);
  matmul_acc(c, a, b);
  return c;
}

double fro_norm(const Mat& m) {
  return std::sqrt(kernels::dot(m.a.data(), m.a.data(), m.a.size()));
}

double max_abs(const Mat& m) {
  double v = 0.0;
  for (double x : m.a) v = std::max(v, std::fabs(x));
  return v;
}

bool cholesky(Mat& a, double min_pivot) {
  if (a.rows != a.cols) throw std::invalid_argument("cholesky: not square");
  const std::size_t n = a.rows;
  for (std::size_t j = 0; j < n; ++j) {
    double* rj = a.row(j);
    const double d = a(j, j) - kernels::dot(rj, rj, j);
    if (!(d > min_pivot)) return false;
    const double ljj = std::sqrt(d);
    a(j, j) = ljj;
    const double inv = 1.0 / ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double* ri = a.row(i);
      ri[j] = (ri[j] - kernels::dot(ri, rj, j)) * inv;
    }
    for (std::size_t i = j + 1; i < n; ++i) a(j, i) = 0.0;
  }
  return true;
}

void chol_solve(const Mat& l, std::vector<double>& b) {
  const std::size_t n = l.rows;
  if (b.size() != n) throw std::invalid_argument("chol_solve: size mismatch");
  for (std::size_t i = 0; i < n; ++i)
    b[i] = (b[i] - kernels::dot(l.row(i), b.data(), i)) / l(i, i);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * b[k];
    b[ii] = s / l(ii, ii);
  }
}

void trsm_left_lower(const Mat& l, Mat& b) {
  const std::size_t n = l.rows;
  if (b.rows != n) throw std::invalid_argument("trsm: size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    const double* li = l.row(i);
    double* bi = b.row(i);
    for (std::size_t k = 0; k < i; ++k)
      kernels::axpy(-li[k], b.row(k), bi, b.cols);
    kernels::scal(1.0 / li[i], bi, b.cols);
  }
}

Mat chol_inverse(const Mat& l) {
  const std::size_t n = l.rows;
  Mat inv = Mat::identity(n);
  // inv ← L⁻¹, then A⁻¹ = L⁻ᵀ L⁻¹ column by column via back substitution.
  trsm_left_lower(l, inv);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t ii = n; ii-- > 0;) {
      double s = inv(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * inv(k, j);
      inv(ii, j) = s / l(ii, ii);
    }
  }
  // Symmetrize to wash out roundoff asymmetry.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = inv(j, i) = v;
    }
  return inv;
}

namespace {

// Householder reduction of the symmetric matrix stored in z to tridiagonal
// form (diagonal d, subdiagonal e).  With want_vectors, z accumulates the
// orthogonal transform for the later QL sweep.
void tridiagonalize(Mat& z, std::vector<double>& d, std::vector<double>& e,
                    bool want_vectors) {
  const std::size_t n = z.rows;
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t i = n - 1; i >= 1; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(z(i, k));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (want_vectors) z(j, i) = z(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = z(i, j);
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k)
            z(j, k) -= f * e[k] + g * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (want_vectors) {
      const std::size_t l = i;
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < l; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < l; ++k) g += z(i, k) * z(k, j);
          for (std::size_t k = 0; k < l; ++k) z(k, j) -= g * z(k, i);
        }
      }
      d[i] = z(i, i);
      z(i, i) = 1.0;
      for (std::size_t j = 0; j < l; ++j) z(j, i) = z(i, j) = 0.0;
    } else {
      d[i] = z(i, i);
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e); rotates z's columns along when
// it holds eigenvectors.  Throws on (never observed) non-convergence.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Mat* z) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw std::runtime_error("sym_eig: QL iteration stalled");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          r = std::hypot(f, g);
          e[ii + 1] = r;
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              f = (*z)(k, ii + 1);
              (*z)(k, ii + 1) = s * (*z)(k, ii) + c * f;
              (*z)(k, ii) = c * (*z)(k, ii) - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

EigResult sym_eig(const Mat& a, bool want_vectors) {
  if (a.rows != a.cols) throw std::invalid_argument("sym_eig: not square");
  const std::size_t n = a.rows;
  EigResult res;
  if (n == 0) return res;
  Mat z = a;
  std::vector<double> e;
  if (n == 1) {
    res.values = {a(0, 0)};
    if (want_vectors) res.vectors = Mat::identity(1);
    return res;
  }
  tridiagonalize(z, res.values, e, want_vectors);
  ql_implicit(res.values, e, want_vectors ? &z : nullptr);
  // Sort eigenvalues ascending, carrying columns along.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return res.values[x] < res.values[y];
  });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = res.values[order[i]];
  res.values = std::move(sorted);
  if (want_vectors) {
    res.vectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        res.vectors(i, j) = z(i, order[j]);
  }
  return res;
}

double sym_eig_min(const Mat& a) {
  const EigResult r = sym_eig(a, false);
  if (r.values.empty()) throw std::invalid_argument("sym_eig_min: empty");
  return r.values.front();
}

}  // namespace pvh
