#include "lazy_spectra/pencil.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "lazy_spectra/cg.hpp"
#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/rng.hpp"
#include "lazy_spectra/svrg.hpp"

namespace lazy_spectra {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::cg:
      return "cg";
    case Backend::svrg:
      return "svrg";
    default:
      return "auto";
  }
}

Backend parse_backend(const std::string& name) {
  if (name == "cg") return Backend::cg;
  if (name == "svrg") return Backend::svrg;
  if (name == "auto") return Backend::automatic;
  throw ValueError("unknown backend '" + name + "'");
}

namespace {

constexpr double kMinRelativeResidual = 1e-14;
constexpr double kSvrgMinRelativeError = 1e-11;

double cg_relative_tolerance(double abs_tol, double lambda_min, double rhs_norm) {
  const double rtol = abs_tol * lambda_min / rhs_norm;
  return std::clamp(rtol, kMinRelativeResidual, 0.5);
}

}  // namespace

MetricBounds compute_metric_bounds(const SymmetricMatrix& b) {
  const Index d = b.dim();
  MetricBounds mb;
  if (d <= 2000) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(b.to_dense(), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 1e-14 * std::max(hi, 1e-300))) throw PreconditionError("B is not positive definite");
    // tiny relative margins keep the bounds on the safe side of rounding
    mb.lambda_min = lo * (1.0 - 1e-12);
    mb.lambda_max = hi * (1.0 + 1e-12);
    return mb;
  }
  mb.lambda_max = std::min(b.trace(), b.gershgorin_bound());
  double gersh_lo = INFINITY;
  for (Index i = 0; i < d; ++i) {
    double off = 0.0, diag = 0.0;
    for (Index p = b.row_ptr()[i]; p < b.row_ptr()[i + 1]; ++p) {
      if (b.col_idx()[p] == i) {
        diag = b.values()[p];
      } else {
        off += std::abs(b.values()[p]);
      }
    }
    gersh_lo = std::min(gersh_lo, diag - off);
  }
  if (gersh_lo > 0.0) {
    mb.lambda_min = gersh_lo;
    return mb;
  }
  CounterRng rng(0x5eed, 23);
  Vector v = rng.gaussian_vector(d).normalized();
  double inv_top = 0.0;
  const Vector diag = b.diagonal_entries();
  if ((diag.array() <= 0.0).any()) throw PreconditionError("B has a nonpositive diagonal entry");
  CgOptions opt;
  opt.diagonal = &diag;
  for (int it = 0; it < 60; ++it) {
    Vector w;
    try {
      w = conjugate_gradient(b, v, 1e-10, opt).x;
    } catch (const NonConvergenceError&) {
      throw PreconditionError("B is not positive definite (CG failed)");
    }
    inv_top = w.norm();
    v = w / inv_top;
  }
  mb.lambda_min = 0.9 / inv_top;
  return mb;
}

MatrixPencil::MatrixPencil(std::shared_ptr<const SymmetricMatrix> a, std::shared_ptr<const SymmetricMatrix> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_->dim() != b_->dim()) throw DimensionError("A and B have different dimensions");
  b_diag_ = b_->diagonal_entries();
  if ((b_diag_.array() <= 0.0).any()) throw PreconditionError("B has a nonpositive diagonal entry");
  bounds_ = compute_metric_bounds(*b_);
}

void MatrixPencil::apply_binv_a(const Vector& w, Vector& out, double abs_tol, const Vector* warm,
                                std::uint64_t) const {
  Vector aw(dim());
  a_->apply(w, aw);
  const double nrm = aw.norm();
  if (nrm == 0.0) {
    out = Vector::Zero(dim());
    return;
  }
  CgOptions opt;
  opt.kappa = bounds_.kappa();
  opt.diagonal = &b_diag_;
  opt.x0 = warm;
  out = conjugate_gradient(*b_, aw, cg_relative_tolerance(abs_tol, bounds_.lambda_min, nrm), opt).x;
}

CcaPencil::CcaPencil(std::shared_ptr<const CcaProblem> problem, Backend backend)
    : problem_(std::move(problem)),
      backend_(backend),
      a_op_(*problem_, BlockOp::a, true),
      b_op_(*problem_, BlockOp::b, true) {
  if (backend_ == Backend::automatic) {
    // stochastic inner solves only pay off when samples vastly outnumber
    // features
    backend_ = problem_->n() >= 100 * problem_->dim() ? Backend::svrg : Backend::cg;
  }
}

MetricBounds CcaPencil::metric_bounds() const {
  MetricBounds mb;
  mb.lambda_min = problem_->lambda_min_b() * (1.0 - 1e-12);
  mb.lambda_max = problem_->lambda_max_b() * (1.0 + 1e-12);
  return mb;
}

void CcaPencil::apply_binv_a(const Vector& w, Vector& out, double abs_tol, const Vector* warm,
                             std::uint64_t seed) const {
  if (backend_ == Backend::svrg) {
    SvrgOptions opt;
    opt.x0 = warm;
    // stochastic estimates stall near round-off; cap the requested accuracy
    const double tol = std::max(abs_tol, kSvrgMinRelativeError * w.norm());
    out = svrg_binv_a(*problem_, w, tol, seed, opt).x;
    return;
  }
  Vector aw(dim());
  a_op_.apply(w, aw);
  const double nrm = aw.norm();
  if (nrm == 0.0) {
    out = Vector::Zero(dim());
    return;
  }
  CgOptions opt;
  opt.kappa = problem_->kappa_b();
  opt.diagonal = &problem_->b_diagonal();
  opt.x0 = warm;
  out = conjugate_gradient(b_op_, aw, cg_relative_tolerance(abs_tol, problem_->lambda_min_b(), nrm), opt).x;
}

}  // namespace lazy_spectra
