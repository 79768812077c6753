#pragma once

#include <vector>

#include "lazy_spectra/kernels.hpp"
#include "lazy_spectra/types.hpp"

namespace lazy_spectra {

// Anything that can apply a symmetric linear map.
class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;
  virtual Index dim() const = 0;
  virtual void apply(const Vector& x, Vector& y) const = 0;

  Vector operator*(const Vector& x) const {
    Vector y(dim());
    apply(x, y);
    return y;
  }
};

struct Triplet {
  Index row;
  Index col;
  double value;
};

// Sparse symmetric matrix stored as full CSR (both triangles), columns sorted
// within each row. Immutable after construction.
class SymmetricMatrix : public SymmetricOperator {
 public:
  SymmetricMatrix() = default;

  // Builds from entries of one triangle (or both, mirrored=false). Duplicates
  // are summed. With mirrored=true every off-diagonal (i,j) also sets (j,i).
  static SymmetricMatrix from_triplets(Index dim, const std::vector<Triplet>& entries, bool mirrored);
  // Exact symmetry is required; entries with |a_ij| <= drop_tol are skipped.
  static SymmetricMatrix from_dense(const DenseMatrix& m, double drop_tol = 0.0);
  static SymmetricMatrix identity(Index dim);
  static SymmetricMatrix diagonal(const Vector& diag);

  Index dim() const override { return dim_; }
  Index nnz() const { return static_cast<Index>(values_.size()); }
  void apply(const Vector& x, Vector& y) const override;

  double entry(Index i, Index j) const;
  Vector diagonal_entries() const;
  double trace() const;
  // Max absolute row sum; bounds the spectral norm.
  double gershgorin_bound() const;
  DenseMatrix to_dense() const;
  SymmetricMatrix scaled(double c) const;

  const std::vector<Index>& row_ptr() const { return row_ptr_; }
  const std::vector<Index>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  kernels::Csr csr() const { return {dim_, row_ptr_.data(), col_idx_.data(), values_.data()}; }

 private:
  Index dim_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> col_idx_;
  std::vector<double> values_;
};

}  // namespace lazy_spectra
