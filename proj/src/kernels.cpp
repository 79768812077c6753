#include "lazy_spectra/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace lazy_spectra::kernels {

namespace {
ExecutionPolicy make_default_policy() {
  ExecutionPolicy p;
  p.threads = omp_get_max_threads();
  if (const char* env = std::getenv("LAZY_SPECTRA_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) p.threads = std::min(n, p.threads);
    } catch (...) {
      // ignore malformed value
    }
  }
  return p;
}
}  // namespace

ExecutionPolicy& policy() {
  static ExecutionPolicy p = make_default_policy();
  return p;
}

void set_deterministic(bool on) { policy().deterministic = on; }

bool use_parallel(Index work) {
  const auto& p = policy();
  return !p.deterministic && p.threads > 1 && work >= p.parallel_threshold && !omp_in_parallel();
}

namespace serial {

void csr_spmv(const Csr& a, const double* x, double* y) {
  for (Index i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (Index p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) s += a.val[p] * x[a.col[p]];
    y[i] = s;
  }
}

void gemv(const RowMajorView& a, const double* x, double* y) {
  for (Index i = 0; i < a.rows; ++i) {
    const double* row = a.data + i * a.cols;
    double s = 0.0;
    for (Index j = 0; j < a.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void gemv_t(const RowMajorView& a, const double* x, double* y) {
  std::fill(y, y + a.cols, 0.0);
  for (Index i = 0; i < a.rows; ++i) {
    const double* row = a.data + i * a.cols;
    const double xi = x[i];
    for (Index j = 0; j < a.cols; ++j) y[j] += row[j] * xi;
  }
}

}  // namespace serial

namespace omp {

void csr_spmv(const Csr& a, const double* x, double* y) {
  const int nt = policy().threads;
#pragma omp parallel for schedule(static) num_threads(nt)
  for (Index i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (Index p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) s += a.val[p] * x[a.col[p]];
    y[i] = s;
  }
}

void gemv(const RowMajorView& a, const double* x, double* y) {
  const int nt = policy().threads;
#pragma omp parallel for schedule(static) num_threads(nt)
  for (Index i = 0; i < a.rows; ++i) {
    const double* row = a.data + i * a.cols;
    double s = 0.0;
    for (Index j = 0; j < a.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

// Row blocks accumulate into private partials, merged in block order so the
// result does not depend on the thread count.
void gemv_t(const RowMajorView& a, const double* x, double* y) {
  constexpr Index kBlocks = 64;
  const Index nb = std::min<Index>(kBlocks, std::max<Index>(1, a.rows));
  std::vector<double> partial(static_cast<std::size_t>(nb * a.cols), 0.0);
  const int nt = policy().threads;
#pragma omp parallel for schedule(static) num_threads(nt)
  for (Index b = 0; b < nb; ++b) {
    const Index lo = a.rows * b / nb;
    const Index hi = a.rows * (b + 1) / nb;
    double* acc = partial.data() + b * a.cols;
    for (Index i = lo; i < hi; ++i) {
      const double* row = a.data + i * a.cols;
      const double xi = x[i];
      for (Index j = 0; j < a.cols; ++j) acc[j] += row[j] * xi;
    }
  }
  std::fill(y, y + a.cols, 0.0);
  for (Index b = 0; b < nb; ++b) {
    const double* acc = partial.data() + b * a.cols;
    for (Index j = 0; j < a.cols; ++j) y[j] += acc[j];
  }
}

}  // namespace omp

void csr_spmv(const Csr& a, const double* x, double* y) {
  if (use_parallel(a.row_ptr[a.rows] * 2)) {
    omp::csr_spmv(a, x, y);
  } else {
    serial::csr_spmv(a, x, y);
  }
}

void gemv(const RowMajorView& a, const double* x, double* y) {
  if (use_parallel(a.rows * a.cols * 2)) {
    omp::gemv(a, x, y);
  } else {
    serial::gemv(a, x, y);
  }
}

void gemv_t(const RowMajorView& a, const double* x, double* y) {
  if (use_parallel(a.rows * a.cols * 2)) {
    omp::gemv_t(a, x, y);
  } else {
    serial::gemv_t(a, x, y);
  }
}

}  // namespace lazy_spectra::kernels
