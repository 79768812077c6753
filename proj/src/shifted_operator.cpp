#include "lazy_spectra/shifted_operator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "lazy_spectra/agd.hpp"
#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/rng.hpp"
#include "lazy_spectra/svrg.hpp"

namespace lazy_spectra {

ShiftedOperator::ShiftedOperator(const Pencil& pencil, const ImplicitBasis& basis, double shift, Sign sign,
                                 InnerBackend backend)
    : ShiftedOperator(pencil, basis, shift, sign, estimate_spectrum_bounds(pencil, basis, shift, sign), backend) {}

ShiftedOperator::ShiftedOperator(const Pencil& pencil, const ImplicitBasis& basis, double shift, Sign sign,
                                 SpectrumBounds bounds, InnerBackend backend)
    : pencil_(&pencil), basis_(&basis), shift_(shift), sign_(sign), bounds_(bounds), backend_(backend) {
  if (basis.dim() != pencil.dim()) throw DimensionError("basis and pencil dimensions differ");
  if (!(bounds_.lower > 0.0) || !(bounds_.upper >= bounds_.lower)) {
    throw ConditioningError("shifted operator is not positive definite (lower bound " + std::to_string(bounds_.lower) +
                            ")");
  }
  if (backend_ == InnerBackend::stochastic && !pencil.cca()) {
    throw ValueError("the stochastic backend needs a CCA problem");
  }
}

void ShiftedOperator::apply(const Vector& w, Vector& out, double abs_tol, Vector* warm, std::uint64_t seed) const {
  if (w.size() != pencil_->dim()) throw DimensionError("shifted operator: dimension mismatch");
  const MetricBounds mb = pencil_->metric_bounds();
  // |P| <= sqrt(kappa_B) for the B-orthogonal projector
  const double p_norm = basis_->empty() ? 1.0 : std::sqrt(mb.kappa());
  const Vector u = basis_->project_out(w);
  Vector c;
  pencil_->apply_binv_a(u, c, abs_tol / p_norm, warm && warm->size() == w.size() ? warm : nullptr, seed);
  if (warm) *warm = c;
  basis_->project_out_in_place(c);
  out = shift_ * w + sign_value(sign_) * c;
}

SpectrumBounds estimate_spectrum_bounds(const Pencil& pencil, const ImplicitBasis& basis, double shift, Sign sign) {
  const Index d = pencil.dim();
  const Index m = std::min<Index>(d, 60);
  ShiftedOperator op(pencil, basis, shift, sign, SpectrumBounds{1.0, 1.0});
  const SymmetricOperator& b = pencil.b();
  CounterRng rng(0x1a2c05, 7);

  std::vector<Vector> q;
  std::vector<Vector> bq;
  Vector alpha = Vector::Zero(m);
  Vector beta = Vector::Zero(m);
  Vector v = rng.gaussian_vector(d);
  Vector bv = b * v;
  double nrm = std::sqrt(v.dot(bv));
  v /= nrm;
  bv /= nrm;
  Index steps = 0;
  for (Index j = 0; j < m; ++j) {
    q.push_back(v);
    bq.push_back(bv);
    Vector r;
    op.apply(v, r, 1e-12);
    alpha[j] = bv.dot(r);
    // full reorthogonalization in the B inner product, twice
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < q.size(); ++i) r -= bq[i].dot(r) * q[i];
    }
    ++steps;
    Vector br = b * r;
    const double bn = std::sqrt(std::max(0.0, r.dot(br)));
    if (j + 1 == m || bn < 1e-10 * std::max(1.0, std::abs(alpha[j]))) break;
    beta[j] = bn;
    v = r / bn;
    bv = br / bn;
  }
  DenseMatrix t = DenseMatrix::Zero(steps, steps);
  for (Index j = 0; j < steps; ++j) {
    t(j, j) = alpha[j];
    if (j + 1 < steps) t(j, j + 1) = t(j + 1, j) = beta[j];
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(t, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) {
    throw ConditioningError("shifted operator is not positive definite (Ritz value " + std::to_string(lo) + ")");
  }
  const bool exact = steps == d;
  return {exact ? lo * (1.0 - 1e-9) : 0.9 * lo, exact ? hi * (1.0 + 1e-9) : 1.1 * hi};
}

SolveResult solve_shifted(const ShiftedOperator& op, const Vector& chi, double tol, const SolveOptions& options) {
  const Pencil& pencil = op.pencil();
  if (chi.size() != pencil.dim()) throw DimensionError("solve_shifted: dimension mismatch");
  if (!(tol > 0.0)) throw ValueError("solve_shifted: tol must be positive");
  const SpectrumBounds sb = op.bounds();
  if (sb.kappa() > options.condition_cap) {
    throw ConditioningError("shifted operator condition estimate " + std::to_string(sb.kappa()) + " exceeds cap " +
                            std::to_string(options.condition_cap));
  }

  SolveResult res;
  if (op.backend() == InnerBackend::stochastic) {
    ShiftedSvrgOptions so;
    so.spectrum_lower = sb.lower;
    so.x0 = options.x0;
    const SvrgResult sr = svrg_shifted_cca(*pencil.cca(), op.shift(), op.sign(), op.basis(), chi, tol, options.seed, so);
    res.x = sr.x;
    res.iterations = sr.epochs;
    res.matvecs = sr.epochs;
    res.certified = true;
    return res;
  }

  const MetricBounds mb = pencil.metric_bounds();
  const double sigma = sb.lower;
  const double smooth = sb.upper;
  const SymmetricOperator& b = pencil.b();
  const double root_kappa_b = std::sqrt(mb.kappa());

  Vector x0 = Vector::Zero(chi.size());
  Vector residual = -chi;
  Vector warm;
  if (options.x0) {
    x0 = *options.x0;
    op.apply(x0, residual, 1e-3 * tol * sigma / root_kappa_b, nullptr, options.seed);
    residual -= chi;
    ++res.matvecs;
  }
  // f(x0) - f* <= |B^{1/2} r|^2 / (2 sigma); the target keeps the implicit
  // error below tol, with half of it reserved for matvec noise.
  const double initial_gap = 0.5 * residual.dot(b * residual) / sigma;
  const double target_gap = 0.5 * tol * tol * mb.lambda_min * sigma;
  if (options.early_exit && root_kappa_b * residual.norm() / sigma <= tol) {
    res.x = x0;
    res.certified = true;
    return res;
  }

  QuadraticOracle oracle;
  oracle.smoothness = smooth;
  oracle.strong_convexity = sigma;
  const Index planned = std::max<Index>(1, agd_planned_iterations(oracle.tau(), initial_gap, 0.5 * target_gap));
  const double mv_tol = tol * sigma * std::sqrt(mb.lambda_min / mb.lambda_max) / (64.0 * static_cast<double>(planned));
  oracle.gradient_error = mv_tol * std::sqrt(mb.lambda_max);
  const bool use_warm = pencil.backend() == Backend::svrg;
  Index calls = 0;
  oracle.gradient = [&](const Vector& x, Vector& g) {
    op.apply(x, g, mv_tol, use_warm ? &warm : nullptr,
             options.seed + static_cast<std::uint64_t>(calls));
    ++calls;
    g -= chi;
  };
  AgdOptions ao;
  if (options.early_exit) {
    ao.stop = [&](const Vector&, const Vector& g) { return root_kappa_b * (g.norm() + mv_tol) / sigma <= tol; };
  }
  const AgdResult ar = agd_run(oracle, x0, planned, ao);
  res.x = ar.x;
  res.iterations = ar.iterations;
  res.planned_iterations = planned;
  res.matvecs += calls;
  res.certified = ar.stopped_early;
  return res;
}

}  // namespace lazy_spectra
