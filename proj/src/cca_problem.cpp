#include "lazy_spectra/cca_problem.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "lazy_spectra/cg.hpp"
#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/rng.hpp"

namespace lazy_spectra {

namespace {

// Operator Sxx (or Syy) from data, for the large-d bound path.
class CovarianceOperator : public SymmetricOperator {
 public:
  CovarianceOperator(const DataMatrix& m, double gamma) : m_(&m), gamma_(gamma) {}
  Index dim() const override { return m_->cols(); }
  void apply(const Vector& x, Vector& y) const override {
    y = m_->transpose_times(m_->times(x)) / static_cast<double>(m_->rows()) + gamma_ * x;
  }

 private:
  const DataMatrix* m_;
  double gamma_;
};

// Extreme eigenvalue bounds of a covariance without forming it: power
// iteration for the top, inverse power iteration (CG inner solves) for the
// bottom. CG failure means the block is numerically singular.
std::pair<double, double> iterative_bounds(const DataMatrix& m, double gamma, const char* name) {
  CovarianceOperator op(m, gamma);
  CounterRng rng(0x5eed, 17);
  Vector v = rng.gaussian_vector(op.dim()).normalized();
  double top = 0.0;
  for (int it = 0; it < 100; ++it) {
    Vector w = op * v;
    top = w.norm();
    v = w / top;
  }
  v = rng.gaussian_vector(op.dim()).normalized();
  double inv_top = 0.0;
  try {
    for (int it = 0; it < 60; ++it) {
      Vector w = conjugate_gradient(op, v, 1e-10).x;
      inv_top = w.norm();
      v = w / inv_top;
    }
  } catch (const NonConvergenceError&) {
    throw PreconditionError(std::string(name) + " is singular; add regularization (gamma > 0)");
  }
  // safety margins: power iteration under-estimates the top eigenvalue and
  // the inverse iteration over-estimates the bottom one
  return {0.9 / inv_top, 1.1 * top};
}

void check_dense_pd(const DenseMatrix& s, const char* name, double& lo, double& hi) {
  Eigen::LLT<DenseMatrix> llt(s);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s, Eigen::EigenvaluesOnly);
  lo = es.eigenvalues().minCoeff();
  hi = es.eigenvalues().maxCoeff();
  if (llt.info() != Eigen::Success || !(lo > 1e-12 * std::max(hi, 1e-300))) {
    throw PreconditionError(std::string(name) + " is not positive definite; add regularization (gamma > 0)");
  }
}

}  // namespace

CcaProblem::CcaProblem(DataMatrix x, DataMatrix y, double gamma_x, double gamma_y)
    : x_(std::move(x)), y_(std::move(y)), gamma_x_(gamma_x), gamma_y_(gamma_y) {
  if (x_.rows() != y_.rows()) {
    throw DimensionError("X has " + std::to_string(x_.rows()) + " rows but Y has " + std::to_string(y_.rows()));
  }
  if (!(gamma_x_ >= 0.0) || !(gamma_y_ >= 0.0)) throw ValueError("regularizers must be nonnegative");
  max_row_norm_sq_ = std::max(x_.row_norms_squared().maxCoeff(), y_.row_norms_squared().maxCoeff());
  b_diagonal_.resize(dim());
  b_diagonal_.head(dx()) = x_.values().colwise().squaredNorm().transpose() / static_cast<double>(n());
  b_diagonal_.tail(dy()) = y_.values().colwise().squaredNorm().transpose() / static_cast<double>(n());
  b_diagonal_.head(dx()).array() += gamma_x_;
  b_diagonal_.tail(dy()).array() += gamma_y_;
  check_and_bound();
}

void CcaProblem::check_and_bound() {
  const double inv_n = 1.0 / static_cast<double>(n());
  if (dim() <= kDenseLimit) {
    has_dense_ = true;
    sxx_ = x_.values().transpose() * x_.values() * inv_n;
    sxx_.diagonal().array() += gamma_x_;
    syy_ = y_.values().transpose() * y_.values() * inv_n;
    syy_.diagonal().array() += gamma_y_;
    sxy_ = x_.values().transpose() * y_.values() * inv_n;
    double lx, hx, ly, hy;
    check_dense_pd(sxx_, "S_xx", lx, hx);
    check_dense_pd(syy_, "S_yy", ly, hy);
    lambda_min_b_ = std::min(lx, ly);
    lambda_max_b_ = std::max(hx, hy);
    // covariance products cost d^2 against 2 n d for the data path
    use_gram_ = dim() < 2 * n();
  } else {
    const auto [lx, hx] = iterative_bounds(x_, gamma_x_, "S_xx");
    const auto [ly, hy] = iterative_bounds(y_, gamma_y_, "S_yy");
    lambda_min_b_ = std::min(lx, ly);
    lambda_max_b_ = std::max(hx, hy);
  }
}

Vector CcaProblem::sxx(const Vector& u) const {
  return x_.transpose_times(x_.times(u)) / static_cast<double>(n()) + gamma_x_ * u;
}

Vector CcaProblem::syy(const Vector& u) const {
  return y_.transpose_times(y_.times(u)) / static_cast<double>(n()) + gamma_y_ * u;
}

Vector CcaProblem::sxy(const Vector& psi) const {
  return x_.transpose_times(y_.times(psi)) / static_cast<double>(n());
}

Vector CcaProblem::syx(const Vector& phi) const {
  return y_.transpose_times(x_.times(phi)) / static_cast<double>(n());
}

void CcaProblem::apply_a(const Vector& z, Vector& out) const {
  if (z.size() != dim()) throw DimensionError("cca block apply: dimension mismatch");
  out.resize(dim());
  out.head(dx()) = sxy(z.tail(dy()));
  out.tail(dy()) = syx(z.head(dx()));
}

void CcaProblem::apply_b(const Vector& z, Vector& out) const {
  if (z.size() != dim()) throw DimensionError("cca block apply: dimension mismatch");
  out.resize(dim());
  out.head(dx()) = sxx(z.head(dx()));
  out.tail(dy()) = syy(z.tail(dy()));
}

void CcaProblem::apply_a_fast(const Vector& z, Vector& out) const {
  if (!use_gram_) return apply_a(z, out);
  if (z.size() != dim()) throw DimensionError("cca block apply: dimension mismatch");
  out.resize(dim());
  out.head(dx()).noalias() = sxy_ * z.tail(dy());
  out.tail(dy()).noalias() = sxy_.transpose() * z.head(dx());
}

void CcaProblem::apply_b_fast(const Vector& z, Vector& out) const {
  if (!use_gram_) return apply_b(z, out);
  if (z.size() != dim()) throw DimensionError("cca block apply: dimension mismatch");
  out.resize(dim());
  out.head(dx()).noalias() = sxx_ * z.head(dx());
  out.tail(dy()).noalias() = syy_ * z.tail(dy());
}

DenseMatrix CcaProblem::dense_a() const {
  const double inv_n = 1.0 / static_cast<double>(n());
  DenseMatrix a = DenseMatrix::Zero(dim(), dim());
  const DenseMatrix s = x_.values().transpose() * y_.values() * inv_n;
  a.topRightCorner(dx(), dy()) = s;
  a.bottomLeftCorner(dy(), dx()) = s.transpose();
  return a;
}

DenseMatrix CcaProblem::dense_b() const {
  const double inv_n = 1.0 / static_cast<double>(n());
  DenseMatrix b = DenseMatrix::Zero(dim(), dim());
  b.topLeftCorner(dx(), dx()) = x_.values().transpose() * x_.values() * inv_n;
  b.bottomRightCorner(dy(), dy()) = y_.values().transpose() * y_.values() * inv_n;
  b.diagonal().head(dx()).array() += gamma_x_;
  b.diagonal().tail(dy()).array() += gamma_y_;
  return b;
}

Vector cca_block_apply(const CcaProblem& problem, BlockOp which, const Vector& z) {
  Vector out;
  if (which == BlockOp::a) {
    problem.apply_a(z, out);
  } else {
    problem.apply_b(z, out);
  }
  return out;
}

void CcaBlockOperator::apply(const Vector& x, Vector& y) const {
  if (which_ == BlockOp::a) {
    fast_ ? problem_->apply_a_fast(x, y) : problem_->apply_a(x, y);
  } else {
    fast_ ? problem_->apply_b_fast(x, y) : problem_->apply_b(x, y);
  }
}

}  // namespace lazy_spectra
