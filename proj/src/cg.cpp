#include "lazy_spectra/cg.hpp"

#include <cmath>

#include "lazy_spectra/errors.hpp"

namespace lazy_spectra {

Index cg_iteration_cap(double kappa, double tol, Index dim) {
  if (kappa <= 0.0) return 10 * dim + 50;
  return static_cast<Index>(std::ceil(10.0 * std::sqrt(kappa) * std::log(1.0 / tol))) + 50;
}

CgResult conjugate_gradient(const SymmetricOperator& b, const Vector& rhs, double tol, const CgOptions& options) {
  const Index d = b.dim();
  if (rhs.size() != d) throw DimensionError("conjugate_gradient: dimension mismatch");
  if (!(tol > 0.0)) throw ValueError("conjugate_gradient: tol must be positive");

  CgResult res;
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) {
    res.x = Vector::Zero(d);
    return res;
  }
  Vector inv_diag;
  if (options.diagonal) {
    if (options.diagonal->size() != d) throw DimensionError("conjugate_gradient: preconditioner size");
    inv_diag = options.diagonal->cwiseInverse();
  }
  auto precondition = [&](const Vector& r) -> Vector {
    if (options.diagonal) return r.cwiseProduct(inv_diag);
    return r;
  };

  Vector x = options.x0 ? *options.x0 : Vector::Zero(d);
  Vector r = rhs;
  Vector q(d);
  if (options.x0) {
    b.apply(x, q);
    r -= q;
  }
  const double target = tol * rhs_norm;
  const Index cap = cg_iteration_cap(options.kappa, tol, d);

  double r_norm = r.norm();
  Vector z = precondition(r);
  Vector p = z;
  double rz = r.dot(z);
  Index it = 0;
  while (r_norm > target) {
    if (it >= cap) {
      throw NonConvergenceError("conjugate gradient hit its iteration cap of " + std::to_string(cap),
                                r_norm / rhs_norm);
    }
    b.apply(p, q);
    const double pq = p.dot(q);
    if (!(pq > 0.0)) throw PreconditionError("conjugate gradient: operator is not positive definite");
    const double alpha = rz / pq;
    x.noalias() += alpha * p;
    r.noalias() -= alpha * q;
    ++it;
    r_norm = r.norm();
    if (r_norm <= target) break;
    z = precondition(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  res.x = std::move(x);
  res.iterations = it;
  res.relative_residual = r_norm / rhs_norm;
  return res;
}

}  // namespace lazy_spectra
