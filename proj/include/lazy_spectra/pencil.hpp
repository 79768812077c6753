#pragma once

#include <cstdint>
#include <memory>

#include "lazy_spectra/cca_problem.hpp"
#include "lazy_spectra/symmetric_matrix.hpp"

namespace lazy_spectra {

struct MetricBounds {
  double lambda_min = 1.0;  // lower bound on lambda_min(B)
  double lambda_max = 1.0;  // upper bound on lambda_max(B)
  double kappa() const { return lambda_max / lambda_min; }
};

enum class Backend { cg, svrg, automatic };
const char* backend_name(Backend b);
Backend parse_backend(const std::string& name);

// A symmetric pencil (A, B) with B positive definite, plus the machinery to
// apply B^{-1} A to a vector.
class Pencil {
 public:
  virtual ~Pencil() = default;
  virtual Index dim() const = 0;
  virtual const SymmetricOperator& a() const = 0;
  virtual const SymmetricOperator& b() const = 0;
  virtual MetricBounds metric_bounds() const = 0;
  // out with |out - B^{-1} A w| <= abs_tol. warm is an optional initial guess.
  virtual void apply_binv_a(const Vector& w, Vector& out, double abs_tol, const Vector* warm,
                            std::uint64_t seed) const = 0;
  virtual const CcaProblem* cca() const { return nullptr; }
  virtual Backend backend() const { return Backend::cg; }
};

// Generic sparse pencil; B^{-1} by Jacobi-preconditioned CG.
class MatrixPencil : public Pencil {
 public:
  MatrixPencil(std::shared_ptr<const SymmetricMatrix> a, std::shared_ptr<const SymmetricMatrix> b);

  Index dim() const override { return a_->dim(); }
  const SymmetricOperator& a() const override { return *a_; }
  const SymmetricOperator& b() const override { return *b_; }
  const SymmetricMatrix& a_matrix() const { return *a_; }
  const SymmetricMatrix& b_matrix() const { return *b_; }
  MetricBounds metric_bounds() const override { return bounds_; }
  void apply_binv_a(const Vector& w, Vector& out, double abs_tol, const Vector* warm,
                    std::uint64_t seed) const override;

 private:
  std::shared_ptr<const SymmetricMatrix> a_;
  std::shared_ptr<const SymmetricMatrix> b_;
  Vector b_diag_;
  MetricBounds bounds_;
};

// Pencil of a CCA problem. backend cg: CG on B; svrg: svrg_binv_a.
class CcaPencil : public Pencil {
 public:
  CcaPencil(std::shared_ptr<const CcaProblem> problem, Backend backend);

  Index dim() const override { return problem_->dim(); }
  const SymmetricOperator& a() const override { return a_op_; }
  const SymmetricOperator& b() const override { return b_op_; }
  MetricBounds metric_bounds() const override;
  void apply_binv_a(const Vector& w, Vector& out, double abs_tol, const Vector* warm,
                    std::uint64_t seed) const override;
  const CcaProblem* cca() const override { return problem_.get(); }
  Backend backend() const override { return backend_; }

 private:
  std::shared_ptr<const CcaProblem> problem_;
  Backend backend_;
  CcaBlockOperator a_op_;
  CcaBlockOperator b_op_;
};

// Exact (dense for small d, otherwise iterative) bounds on the spectrum of a
// PD matrix. Throws PreconditionError when it is not PD.
MetricBounds compute_metric_bounds(const SymmetricMatrix& b);

}  // namespace lazy_spectra
