#pragma once

#include <cstdint>

#include "lazy_spectra/types.hpp"

// Low-level matvec kernels. Each kernel has a serial reference and an OpenMP
// version; the dispatchers pick one according to the global execution policy.
namespace lazy_spectra::kernels {

struct ExecutionPolicy {
  int threads = 1;
  // Forces the serial kernels so reductions are never reordered.
  bool deterministic = false;
  // Below this much work (flops) the serial kernel is used regardless.
  Index parallel_threshold = 1 << 15;
};

// Process-wide policy. Initialized from LAZY_SPECTRA_THREADS on first use.
ExecutionPolicy& policy();
void set_deterministic(bool on);
bool use_parallel(Index work);

struct Csr {
  Index rows;
  const Index* row_ptr;
  const Index* col;
  const double* val;
};

// Dense row-major matrix view.
struct RowMajorView {
  Index rows;
  Index cols;
  const double* data;
};

namespace serial {
void csr_spmv(const Csr& a, const double* x, double* y);
void gemv(const RowMajorView& a, const double* x, double* y);    // y = A x
void gemv_t(const RowMajorView& a, const double* x, double* y);  // y = A^T x
}  // namespace serial

namespace omp {
void csr_spmv(const Csr& a, const double* x, double* y);
void gemv(const RowMajorView& a, const double* x, double* y);
void gemv_t(const RowMajorView& a, const double* x, double* y);
}  // namespace omp

void csr_spmv(const Csr& a, const double* x, double* y);
void gemv(const RowMajorView& a, const double* x, double* y);
void gemv_t(const RowMajorView& a, const double* x, double* y);

}  // namespace lazy_spectra::kernels
