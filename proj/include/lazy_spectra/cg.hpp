#pragma once

#include "lazy_spectra/symmetric_matrix.hpp"

namespace lazy_spectra {

struct CgOptions {
  // Condition number estimate of B; sets the iteration cap
  // 10 sqrt(kappa) log(1/tol) + 50. Zero means unknown (cap 10 d + 50).
  double kappa = 0.0;
  // Optional Jacobi preconditioner: the diagonal of B.
  const Vector* diagonal = nullptr;
  // Optional starting point.
  const Vector* x0 = nullptr;
};

struct CgResult {
  Vector x;
  Index iterations = 0;
  double relative_residual = 0.0;
};

// Solves B x = rhs to |Bx - rhs| <= tol |rhs|. Throws NonConvergenceError when
// the iteration cap is hit.
CgResult conjugate_gradient(const SymmetricOperator& b, const Vector& rhs, double tol, const CgOptions& options = {});

Index cg_iteration_cap(double kappa, double tol, Index dim);

}  // namespace lazy_spectra
