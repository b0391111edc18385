#include "pvh/kernels.hpp"

#include <cstddef>

namespace pvh::kernels {

namespace ref {

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void ger(double* a, double alpha, const double* x, const double* y,
         std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double axi = alpha * x[i];
    double* row = a + i * cols;
    for (std::size_t j = 0; j < cols; ++j) row[j] += axi * y[j];
  }
}

void gemm_acc(double* c, const double* a, const double* b, std::size_t m,
              std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    const double* arow = a + i * k;
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = arow[l];
      if (ail == 0.0) continue;
      const double* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

}  // namespace ref

#if defined(PVH_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void ger(double* a, double alpha, const double* x, const double* y,
         std::size_t rows, std::size_t cols);
void gemm_acc(double* c, const double* a, const double* b, std::size_t m,
              std::size_t k, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
// NEON is mandatory on aarch64; the vector width is 2 doubles, so the
// compiler's auto-vectorized reference loops are already competitive for the
// streaming kernels.  A hand-written variant is provided for the dot kernel,
// which dominates the Schur-complement assembly.
#include <arm_neon.h>
namespace neon {
double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}
}  // namespace neon
#endif

namespace {

struct Dispatch {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*ger)(double*, double, const double*, const double*, std::size_t,
              std::size_t);
  void (*gemm_acc)(double*, const double*, const double*, std::size_t,
                   std::size_t, std::size_t);
  const char* isa;
};

constexpr Dispatch kScalar = {&ref::dot, &ref::axpy, &ref::scal, &ref::ger,
                              &ref::gemm_acc, "scalar"};

Dispatch detect() {
#if defined(PVH_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return {&avx2::dot, &avx2::axpy, &avx2::scal, &avx2::ger, &avx2::gemm_acc,
            "avx2"};
  }
#endif
#if defined(__aarch64__)
  return {&neon::dot, &ref::axpy, &ref::scal, &ref::ger, &ref::gemm_acc,
          "neon"};
#endif
  return kScalar;
}

const Dispatch g_detected = detect();
Dispatch g_active = g_detected;

}  // namespace

const char* active_isa() { return g_active.isa; }

void force_scalar() { g_active = kScalar; }

void restore_dispatch() { g_active = g_detected; }

double dot(const double* x, const double* y, std::size_t n) {
  return g_active.dot(x, y, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  g_active.axpy(alpha, x, y, n);
}

void scal(double alpha, double* x, std::size_t n) {
  g_active.scal(alpha, x, n);
}

void ger(double* a, double alpha, const double* x, const double* y,
         std::size_t rows, std::size_t cols) {
  g_active.ger(a, alpha, x, y, rows, cols);
}

void gemm_acc(double* c, const double* a, const double* b, std::size_t m,
              std::size_t k, std::size_t n) {
  g_active.gemm_acc(c, a, b, m, k, n);
}

}  // namespace pvh::kernels
