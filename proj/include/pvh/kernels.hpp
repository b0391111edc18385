// Low-level dense linear-algebra kernels.
//
// Every kernel exists in a portable scalar reference form (namespace
// pvh::kernels::ref) and, where the hardware supports it, in a vectorized
// form (AVX2 on x86-64, NEON on aarch64).  The public entry points dispatch
// through function pointers chosen once at startup from CPU capabilities, so
// a single binary runs correctly on any machine.  The vector variants must
// agree with the reference variants up to floating-point reassociation; the
// test suite checks this on randomized inputs.
//
// All matrices handled here are dense row-major arrays of double.

#pragma once

#include <cstddef>

namespace pvh::kernels {

// Name of the instruction set selected at startup: "avx2", "neon" or "scalar".
const char* active_isa();

// Force scalar kernels from now on (used by equivalence tests and
// benchmarking; not needed for correctness).
void force_scalar();

// Restore the startup dispatch choice.
void restore_dispatch();

// Inner product sum_i x[i]*y[i].
double dot(const double* x, const double* y, std::size_t n);

// y += alpha * x.
void axpy(double alpha, const double* x, double* y, std::size_t n);

// x *= alpha.
void scal(double alpha, double* x, std::size_t n);

// Rank-one update of a row-major rows x cols matrix: A += alpha * x * y^T.
void ger(double* a, double alpha, const double* x, const double* y,
         std::size_t rows, std::size_t cols);

// C += A * B with A (m x k), B (k x n), C (m x n), all row-major.
void gemm_acc(double* c, const double* a, const double* b, std::size_t m,
              std::size_t k, std::size_t n);

// Scalar reference implementations (always available, used as the oracle in
// equivalence tests).
namespace ref {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
void ger(double* a, double alpha, const double* x, const double* y,
         std::size_t rows, std::size_t cols);
void gemm_acc(double* c, const double* a, const double* b, std::size_t m,
              std::size_t k, std::size_t n);
}  // namespace ref

}  // namespace pvh::kernels
