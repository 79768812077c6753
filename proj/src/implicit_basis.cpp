#include "lazy_spectra/implicit_basis.hpp"

#include <algorithm>
#include <cmath>

#include "lazy_spectra/errors.hpp"

namespace lazy_spectra {

double b_inner(const SymmetricOperator& b, const Vector& u, const Vector& v) {
  if (u.size() != b.dim() || v.size() != b.dim()) throw DimensionError("b_inner: dimension mismatch");
  return u.dot(b * v);
}

double b_norm(const SymmetricOperator& b, const Vector& v) { return std::sqrt(std::max(0.0, b_inner(b, v, v))); }

ImplicitBasis::ImplicitBasis(Index dim) : dim_(dim), vectors_(dim, 0), b_vectors_(dim, 0), a_vectors_(dim, 0) {}

void ImplicitBasis::append(const Vector& v, const Vector& bv, const std::optional<Vector>& av) {
  if (v.size() != dim_ || bv.size() != dim_ || (av && av->size() != dim_)) {
    throw DimensionError("basis column dimension mismatch");
  }
  const Index k = size();
  vectors_.conservativeResize(dim_, k + 1);
  b_vectors_.conservativeResize(dim_, k + 1);
  vectors_.col(k) = v;
  b_vectors_.col(k) = bv;
  if (has_a_ && av) {
    a_vectors_.conservativeResize(dim_, k + 1);
    a_vectors_.col(k) = *av;
  } else {
    has_a_ = false;
    a_vectors_.resize(dim_, 0);
  }
}

void ImplicitBasis::project_out_in_place(Vector& w) const {
  if (w.size() != dim_) throw DimensionError("projection: dimension mismatch");
  if (empty()) return;
  const Vector c = b_vectors_.transpose() * w;
  w.noalias() -= vectors_ * c;
}

Vector ImplicitBasis::project_out(const Vector& w) const {
  Vector r = w;
  project_out_in_place(r);
  return r;
}

double ImplicitBasis::orthonormality_error() const {
  if (empty()) return 0.0;
  const DenseMatrix g = vectors_.transpose() * b_vectors_;
  return (g - DenseMatrix::Identity(size(), size())).cwiseAbs().maxCoeff();
}

Vector b_project_out(const SymmetricOperator& b, const ImplicitBasis& basis, const Vector& w) {
  if (b.dim() != basis.dim() || w.size() != b.dim()) throw DimensionError("b_project_out: dimension mismatch");
  return basis.project_out(w);
}

ImplicitBasis make_basis(const SymmetricOperator& b, const DenseMatrix& columns, const SymmetricOperator* a) {
  ImplicitBasis basis(columns.rows());
  for (Index j = 0; j < columns.cols(); ++j) {
    const Vector v = columns.col(j);
    std::optional<Vector> av;
    if (a) av = (*a) * v;
    basis.append(v, b * v, av);
  }
  return basis;
}

}  // namespace lazy_spectra
