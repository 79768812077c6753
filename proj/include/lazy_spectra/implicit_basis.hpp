#pragma once

#include <optional>

#include "lazy_spectra/symmetric_matrix.hpp"
#include "lazy_spectra/types.hpp"

namespace lazy_spectra {

double b_inner(const SymmetricOperator& b, const Vector& u, const Vector& v);
double b_norm(const SymmetricOperator& b, const Vector& v);

// B-orthonormal columns stored in implicit coordinates, together with the
// cached products B*V (and optionally A*V) so projections cost O(kd).
class ImplicitBasis {
 public:
  ImplicitBasis() = default;
  explicit ImplicitBasis(Index dim);

  Index dim() const { return dim_; }
  Index size() const { return vectors_.cols(); }
  bool empty() const { return size() == 0; }
  bool has_a_cache() const { return has_a_; }

  // bv = B*v must be supplied; av = A*v is kept when every column has it.
  void append(const Vector& v, const Vector& bv, const std::optional<Vector>& av = std::nullopt);

  const DenseMatrix& vectors() const { return vectors_; }
  const DenseMatrix& b_vectors() const { return b_vectors_; }
  const DenseMatrix& a_vectors() const { return a_vectors_; }
  Vector column(Index j) const { return vectors_.col(j); }

  // (I - V V^T B) w
  Vector project_out(const Vector& w) const;
  void project_out_in_place(Vector& w) const;
  // max |V^T B V - I| from the cached products.
  double orthonormality_error() const;

 private:
  Index dim_ = 0;
  DenseMatrix vectors_;
  DenseMatrix b_vectors_;
  DenseMatrix a_vectors_;
  bool has_a_ = true;
};

// Checks the dimensions against B, then projects.
Vector b_project_out(const SymmetricOperator& b, const ImplicitBasis& basis, const Vector& w);

// Builds a basis from B-orthonormal columns, computing the B (and A) caches.
ImplicitBasis make_basis(const SymmetricOperator& b, const DenseMatrix& columns, const SymmetricOperator* a = nullptr);

}  // namespace lazy_spectra
