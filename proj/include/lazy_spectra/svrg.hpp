#pragma once

#include <cstdint>

#include "lazy_spectra/cca_problem.hpp"
#include "lazy_spectra/implicit_basis.hpp"

namespace lazy_spectra {

struct SvrgOptions {
  Index max_epochs = 400;
  Index epoch_length = 0;    // 0: L / sigma steps clamped to [2n, 64n]
  double step_scale = 0.5;   // step = step_scale / (max component smoothness)
  const Vector* x0 = nullptr;  // warm start
};

struct SvrgResult {
  Vector x;
  Index epochs = 0;
  Index stochastic_steps = 0;
  double gradient_norm = 0.0;
  // certified bound on |x - exact solution|
  double error_bound = 0.0;
};

// B^{-1} A w by SVRG on the decoupled least-squares finite sum
//   f(x) = 1/(2n) sum_i (<X_i,x1> - <Y_i,w2>)^2 + (<Y_i,x2> - <X_i,w1>)^2
//          + gx/2 |x1|^2 + gy/2 |x2|^2,
// stopping once |grad f| / lambda_min(B) <= tol at a snapshot.
SvrgResult svrg_binv_a(const CcaProblem& problem, const Vector& w, double tol, std::uint64_t seed,
                       const SvrgOptions& options = {});

struct ShiftedSvrgOptions : SvrgOptions {
  // Lower bound on the spectrum of the explicit operator lambda I +/- M_s.
  // Zero estimates it with a Lanczos run on the deflated operator.
  double spectrum_lower = 0.0;
};

// N^{-1} w for N = lambda I + s (I - V V^T B) B^{-1} A (I - V V^T B), s = +1
// for Sign::plus and -1 for Sign::minus, by SVRG on
//   F(z) = 1/2 z^T H z - (B w)^T z,  H = lambda B + s (A - Q),
//   Q = BV (AV)^T + AV (BV)^T - BV (V^T A V) (BV)^T.
// Components are sample-wise and may be non-convex; Q is applied through the
// thin factors in O(kd). The basis must carry its A-cache.
SvrgResult svrg_shifted_cca(const CcaProblem& problem, double lambda, Sign sign, const ImplicitBasis& basis,
                            const Vector& w, double tol, std::uint64_t seed, const ShiftedSvrgOptions& options = {});

// Spectral norm of Q via the thin factors.
double deflation_correction_norm(const ImplicitBasis& basis);

// Per-sample smoothness bound of the shifted components:
// lambda (max(|X_i|^2 + gx, |Y_i|^2 + gy)) + |X_i| |Y_i| + |Q|.
double shifted_component_smoothness(const CcaProblem& problem, double lambda, const ImplicitBasis& basis);
Vector shifted_component_smoothness_per_sample(const CcaProblem& problem, double lambda, const ImplicitBasis& basis);

// Dense Hessian of one shifted component (tests and oracle checks).
DenseMatrix shifted_component_hessian(const CcaProblem& problem, double lambda, Sign sign, const ImplicitBasis& basis,
                                      Index i);
DenseMatrix deflation_correction_dense(const ImplicitBasis& basis);

}  // namespace lazy_spectra
