#include "lazy_spectra/svrg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <memory>

#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/rng.hpp"
#include "lazy_spectra/shifted_operator.hpp"

namespace lazy_spectra {

namespace {

// Thin-factor representation of Q = W C W^T with W = [BV AV].
struct Correction {
  const DenseMatrix* bv = nullptr;
  DenseMatrix av_local;
  const DenseMatrix* av = nullptr;
  DenseMatrix g;  // V^T A V
  bool empty = true;

  void apply(const Vector& z, Vector& out) const {
    if (empty) {
      out.setZero(z.size());
      return;
    }
    const Vector pb = bv->transpose() * z;
    const Vector pa = av->transpose() * z;
    out.noalias() = (*bv) * (pa - g * pb);
    out.noalias() += (*av) * pb;
  }
};

Correction make_correction(const CcaProblem& problem, const ImplicitBasis& basis) {
  Correction c;
  if (basis.empty()) return c;
  c.empty = false;
  c.bv = &basis.b_vectors();
  if (basis.has_a_cache()) {
    c.av = &basis.a_vectors();
  } else {
    c.av_local.resize(basis.dim(), basis.size());
    Vector out;
    for (Index j = 0; j < basis.size(); ++j) {
      problem.apply_a_fast(basis.vectors().col(j), out);
      c.av_local.col(j) = out;
    }
    c.av = &c.av_local;
  }
  c.g = basis.vectors().transpose() * (*c.av);
  c.g = 0.5 * (c.g + c.g.transpose());
  return c;
}

// Shared SVRG driver over sample-wise components. step(i, delta, mu, out)
// writes grad f_i(snapshot + delta) - grad f_i(snapshot) + mu into out.
template <typename FullGradient, typename Step>
SvrgResult run_svrg(Index dim, Index n, double smoothness, double strong_convexity, double tol, std::uint64_t seed,
                    const SvrgOptions& options, FullGradient full_gradient, Step step) {
  SvrgResult res;
  Vector snapshot = options.x0 && options.x0->size() == dim ? *options.x0 : Vector::Zero(dim);
  double eta = options.step_scale / smoothness;
  // automatic epoch length: about one condition number of steps, within [2n, 64n]
  Index m = options.epoch_length;
  if (m <= 0) {
    const double cond = std::ceil(smoothness / strong_convexity);
    m = static_cast<Index>(std::clamp(cond, 2.0 * static_cast<double>(n), 64.0 * static_cast<double>(n)));
  }
  CounterRng rng(seed, 0x5f7);

  Vector mu(dim), delta(dim), dir(dim);
  full_gradient(snapshot, mu);
  double gnorm = mu.norm();
  Vector best = snapshot;
  Vector best_mu = mu;
  double best_norm = gnorm;
  while (true) {
    if (gnorm / strong_convexity <= tol) break;
    if (res.epochs >= options.max_epochs) {
      throw NonConvergenceError("SVRG epoch cap of " + std::to_string(options.max_epochs) +
                                    " reached; objective gap estimate " +
                                    std::to_string(0.5 * gnorm * gnorm / strong_convexity),
                                gnorm / strong_convexity);
    }
    ++res.epochs;
    delta.setZero();
    for (Index t = 0; t < m; ++t) {
      const Index i = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
      step(i, delta, mu, dir);
      delta.noalias() -= eta * dir;
    }
    res.stochastic_steps += m;
    Vector candidate = best + delta;
    Vector cmu(dim);
    full_gradient(candidate, cmu);
    const double cnorm = cmu.norm();
    if (!std::isfinite(cnorm) || cnorm > best_norm) {
      // components can be non-convex; back off and lengthen the epoch
      eta *= 0.5;
      m *= 2;
      mu = best_mu;
      gnorm = best_norm;
      continue;
    }
    best = std::move(candidate);
    best_mu = cmu;
    best_norm = cnorm;
    mu = cmu;
    gnorm = cnorm;
  }
  res.x = best;
  res.gradient_norm = best_norm;
  res.error_bound = best_norm / strong_convexity;
  return res;
}

}  // namespace

SvrgResult svrg_binv_a(const CcaProblem& problem, const Vector& w, double tol, std::uint64_t seed,
                       const SvrgOptions& options) {
  const Index d = problem.dim();
  if (w.size() != d) throw DimensionError("svrg_binv_a: dimension mismatch");
  if (!(tol > 0.0)) throw ValueError("svrg_binv_a: tol must be positive");
  Vector aw;
  problem.apply_a_fast(w, aw);
  if (aw.norm() == 0.0) {
    SvrgResult r;
    r.x = Vector::Zero(d);
    return r;
  }
  const Index dx = problem.dx(), dy = problem.dy();
  const double gx = problem.gamma_x(), gy = problem.gamma_y();
  const Vector rx = problem.x().row_norms_squared();
  const Vector ry = problem.y().row_norms_squared();
  double smooth = 0.0;
  for (Index i = 0; i < problem.n(); ++i) smooth = std::max({smooth, rx[i] + gx, ry[i] + gy});

  auto full_gradient = [&](const Vector& x, Vector& g) {
    problem.apply_b_fast(x, g);
    g -= aw;
  };
  const auto& xv = problem.x().values();
  const auto& yv = problem.y().values();
  auto step = [&](Index i, const Vector& delta, const Vector& mu, Vector& out) {
    const auto xi = xv.row(i).transpose();
    const auto yi = yv.row(i).transpose();
    const double c1 = xi.dot(delta.head(dx));
    const double c2 = yi.dot(delta.tail(dy));
    out.head(dx) = c1 * xi + gx * delta.head(dx) + mu.head(dx);
    out.tail(dy) = c2 * yi + gy * delta.tail(dy) + mu.tail(dy);
  };
  return run_svrg(d, problem.n(), smooth, problem.lambda_min_b(), tol, seed, options, full_gradient, step);
}

double deflation_correction_norm(const ImplicitBasis& basis) {
  if (basis.empty() || !basis.has_a_cache()) return basis.empty() ? 0.0 : INFINITY;
  const Index k = basis.size();
  DenseMatrix w(basis.dim(), 2 * k);
  w << basis.b_vectors(), basis.a_vectors();
  DenseMatrix g = basis.vectors().transpose() * basis.a_vectors();
  g = 0.5 * (g + g.transpose());
  DenseMatrix c = DenseMatrix::Zero(2 * k, 2 * k);
  c.topLeftCorner(k, k) = -g;
  c.topRightCorner(k, k).setIdentity();
  c.bottomLeftCorner(k, k).setIdentity();
  Eigen::HouseholderQR<DenseMatrix> qr(w);
  const Index r = std::min<Index>(w.rows(), w.cols());
  const DenseMatrix rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const DenseMatrix core = rr * c * rr.transpose();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (core + core.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Vector shifted_component_smoothness_per_sample(const CcaProblem& problem, double lambda, const ImplicitBasis& basis) {
  const double qn = deflation_correction_norm(basis);
  const Vector rx = problem.x().row_norms_squared();
  const Vector ry = problem.y().row_norms_squared();
  Vector l(problem.n());
  for (Index i = 0; i < problem.n(); ++i) {
    l[i] = lambda * std::max(rx[i] + problem.gamma_x(), ry[i] + problem.gamma_y()) + std::sqrt(rx[i] * ry[i]) + qn;
  }
  return l;
}

double shifted_component_smoothness(const CcaProblem& problem, double lambda, const ImplicitBasis& basis) {
  return shifted_component_smoothness_per_sample(problem, lambda, basis).maxCoeff();
}

DenseMatrix deflation_correction_dense(const ImplicitBasis& basis) {
  const Index d = basis.dim();
  if (basis.empty()) return DenseMatrix::Zero(d, d);
  const DenseMatrix& bv = basis.b_vectors();
  const DenseMatrix& av = basis.a_vectors();
  DenseMatrix g = basis.vectors().transpose() * av;
  g = 0.5 * (g + g.transpose());
  return bv * av.transpose() + av * bv.transpose() - bv * g * bv.transpose();
}

DenseMatrix shifted_component_hessian(const CcaProblem& problem, double lambda, Sign sign, const ImplicitBasis& basis,
                                      Index i) {
  const Index dx = problem.dx(), dy = problem.dy(), d = problem.dim();
  const Vector xi = problem.x().values().row(i).transpose();
  const Vector yi = problem.y().values().row(i).transpose();
  const double s = sign_value(sign);
  DenseMatrix h = DenseMatrix::Zero(d, d);
  h.topLeftCorner(dx, dx) = lambda * (xi * xi.transpose());
  h.bottomRightCorner(dy, dy) = lambda * (yi * yi.transpose());
  h.diagonal().head(dx).array() += lambda * problem.gamma_x();
  h.diagonal().tail(dy).array() += lambda * problem.gamma_y();
  h.topRightCorner(dx, dy) = s * xi * yi.transpose();
  h.bottomLeftCorner(dy, dx) = s * yi * xi.transpose();
  if (!basis.empty()) h -= s * deflation_correction_dense(basis);
  return h;
}

SvrgResult svrg_shifted_cca(const CcaProblem& problem, double lambda, Sign sign, const ImplicitBasis& basis,
                            const Vector& w, double tol, std::uint64_t seed, const ShiftedSvrgOptions& options) {
  const Index d = problem.dim();
  if (w.size() != d || basis.dim() != d) throw DimensionError("svrg_shifted_cca: dimension mismatch");
  if (!(tol > 0.0)) throw ValueError("svrg_shifted_cca: tol must be positive");
  double lower = options.spectrum_lower;
  if (!(lower > 0.0)) {
    // no hint: Lanczos estimate of the bottom of the shifted spectrum (throws if not PD)
    const std::shared_ptr<const CcaProblem> view(&problem, [](const CcaProblem*) {});
    lower = estimate_spectrum_bounds(CcaPencil(view, Backend::cg), basis, lambda, sign).lower;
  }

  const Index dx = problem.dx(), dy = problem.dy();
  const double gx = problem.gamma_x(), gy = problem.gamma_y();
  const double s = sign_value(sign);
  const Correction corr = make_correction(problem, basis);
  Vector bw;
  problem.apply_b_fast(w, bw);
  if (bw.norm() == 0.0) {
    SvrgResult r;
    r.x = Vector::Zero(d);
    return r;
  }

  ImplicitBasis tmp;
  double qn = 0.0;
  if (!corr.empty) {
    if (basis.has_a_cache()) {
      qn = deflation_correction_norm(basis);
    } else {
      tmp = ImplicitBasis(d);
      for (Index j = 0; j < basis.size(); ++j) tmp.append(basis.vectors().col(j), basis.b_vectors().col(j), Vector(corr.av->col(j)));
      qn = deflation_correction_norm(tmp);
    }
  }
  const Vector rx = problem.x().row_norms_squared();
  const Vector ry = problem.y().row_norms_squared();
  double smooth = 0.0;
  for (Index i = 0; i < problem.n(); ++i) {
    smooth = std::max(smooth, lambda * std::max(rx[i] + gx, ry[i] + gy) + std::sqrt(rx[i] * ry[i]) + qn);
  }

  Vector tb(d), ta(d), tq(d);
  auto full_gradient = [&](const Vector& z, Vector& g) {
    problem.apply_b_fast(z, tb);
    problem.apply_a_fast(z, ta);
    corr.apply(z, tq);
    g = lambda * tb + s * (ta - tq) - bw;
  };
  const auto& xv = problem.x().values();
  const auto& yv = problem.y().values();
  Vector qd(d);
  auto step = [&](Index i, const Vector& delta, const Vector& mu, Vector& out) {
    const auto xi = xv.row(i).transpose();
    const auto yi = yv.row(i).transpose();
    const double c1 = xi.dot(delta.head(dx));
    const double c2 = yi.dot(delta.tail(dy));
    out.head(dx) = (lambda * c1 + s * c2) * xi + lambda * gx * delta.head(dx) + mu.head(dx);
    out.tail(dy) = (lambda * c2 + s * c1) * yi + lambda * gy * delta.tail(dy) + mu.tail(dy);
    if (!corr.empty) {
      corr.apply(delta, qd);
      out.noalias() -= s * qd;
    }
  };
  return run_svrg(d, problem.n(), smooth, problem.lambda_min_b() * lower, tol, seed, options, full_gradient, step);
}

}  // namespace lazy_spectra
