#pragma once

#include "lazy_spectra/data_matrix.hpp"
#include "lazy_spectra/symmetric_matrix.hpp"

namespace lazy_spectra {

enum class BlockOp { a, b };

// Two-view CCA data with the implied block pencil
//   A = [0 Sxy; Sxy^T 0],  B = diag(Sxx, Syy),
//   Sxx = gx I + X^T X / n,  Syy = gy I + Y^T Y / n,  Sxy = X^T Y / n.
// Immutable; safe to share across threads.
class CcaProblem {
 public:
  // Largest d_x + d_y for which dense covariances are formed (PD check,
  // exact metric bounds, and the cached fast path).
  static constexpr Index kDenseLimit = 2000;

  CcaProblem(DataMatrix x, DataMatrix y, double gamma_x = 0.0, double gamma_y = 0.0);

  const DataMatrix& x() const { return x_; }
  const DataMatrix& y() const { return y_; }
  double gamma_x() const { return gamma_x_; }
  double gamma_y() const { return gamma_y_; }
  Index n() const { return x_.rows(); }
  Index dx() const { return x_.cols(); }
  Index dy() const { return y_.cols(); }
  Index dim() const { return dx() + dy(); }

  // Data-only products, O(nnz(X) + nnz(Y)).
  Vector sxx(const Vector& u) const;
  Vector syy(const Vector& u) const;
  Vector sxy(const Vector& psi) const;  // Sxy psi, length dx
  Vector syx(const Vector& phi) const;  // Sxy^T phi, length dy
  void apply_a(const Vector& z, Vector& out) const;
  void apply_b(const Vector& z, Vector& out) const;

  // Same products through the cached covariances when present and cheaper.
  bool uses_gram() const { return use_gram_; }
  void apply_a_fast(const Vector& z, Vector& out) const;
  void apply_b_fast(const Vector& z, Vector& out) const;

  bool has_dense() const { return has_dense_; }
  const DenseMatrix& dense_sxx() const { return sxx_; }
  const DenseMatrix& dense_syy() const { return syy_; }
  const DenseMatrix& dense_sxy() const { return sxy_; }

  double lambda_min_b() const { return lambda_min_b_; }
  double lambda_max_b() const { return lambda_max_b_; }
  double kappa_b() const { return lambda_max_b_ / lambda_min_b_; }
  double max_row_norm_sq() const { return max_row_norm_sq_; }
  // 2 max_i {|X_i|^2, |Y_i|^2} / lambda_min(B)
  double kappa_prime() const { return 2.0 * max_row_norm_sq_ / lambda_min_b_; }

  // Diagonal of B (Jacobi preconditioner).
  const Vector& b_diagonal() const { return b_diagonal_; }

  DenseMatrix dense_a() const;
  DenseMatrix dense_b() const;

 private:
  void check_and_bound();

  DataMatrix x_;
  DataMatrix y_;
  double gamma_x_;
  double gamma_y_;
  bool has_dense_ = false;
  bool use_gram_ = false;
  DenseMatrix sxx_, syy_, sxy_;
  double lambda_min_b_ = 0.0;
  double lambda_max_b_ = 0.0;
  double max_row_norm_sq_ = 0.0;
  Vector b_diagonal_;
};

// A z or B z from data matvecs only.
Vector cca_block_apply(const CcaProblem& problem, BlockOp which, const Vector& z);

// Operator view of one block; fast=true allows the cached covariances.
class CcaBlockOperator : public SymmetricOperator {
 public:
  CcaBlockOperator(const CcaProblem& problem, BlockOp which, bool fast = true)
      : problem_(&problem), which_(which), fast_(fast) {}
  Index dim() const override { return problem_->dim(); }
  void apply(const Vector& x, Vector& y) const override;

 private:
  const CcaProblem* problem_;
  BlockOp which_;
  bool fast_;
};

}  // namespace lazy_spectra
