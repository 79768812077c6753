#pragma once

#include <cstdint>
#include <limits>

#include "lazy_spectra/implicit_basis.hpp"
#include "lazy_spectra/pencil.hpp"

namespace lazy_spectra {

// Bounds on the spectrum of the explicit counterpart lambda I +/- M_s.
struct SpectrumBounds {
  double lower = 0.0;
  double upper = 0.0;
  double kappa() const { return upper / lower; }
};

enum class InnerBackend { nested, stochastic };

// N = lambda I + s P B^{-1} A P with P = I - V V^T B; s = +1 for Sign::plus,
// -1 for Sign::minus. All vectors are in implicit coordinates.
class ShiftedOperator {
 public:
  ShiftedOperator(const Pencil& pencil, const ImplicitBasis& basis, double shift, Sign sign,
                  InnerBackend backend = InnerBackend::nested);
  ShiftedOperator(const Pencil& pencil, const ImplicitBasis& basis, double shift, Sign sign, SpectrumBounds bounds,
                  InnerBackend backend = InnerBackend::nested);

  const Pencil& pencil() const { return *pencil_; }
  const ImplicitBasis& basis() const { return *basis_; }
  double shift() const { return shift_; }
  Sign sign() const { return sign_; }
  InnerBackend backend() const { return backend_; }
  const SpectrumBounds& bounds() const { return bounds_; }

  // out ~ N w with |out - N w| <= abs_tol. warm: guess for the inner
  // B^{-1} A product, updated with the new product on return.
  void apply(const Vector& w, Vector& out, double abs_tol, Vector* warm = nullptr, std::uint64_t seed = 0) const;

 private:
  const Pencil* pencil_;
  const ImplicitBasis* basis_;
  double shift_;
  Sign sign_;
  SpectrumBounds bounds_;
  InnerBackend backend_;
};

// Bounds of lambda I +/- M_s by Lanczos in the B geometry (exact products),
// widened by a safety factor. Used when a caller has no analytic bounds.
SpectrumBounds estimate_spectrum_bounds(const Pencil& pencil, const ImplicitBasis& basis, double shift, Sign sign);

struct SolveOptions {
  // Largest allowed upper/lower ratio of the spectrum bounds.
  double condition_cap = std::numeric_limits<double>::infinity();
  // Starting point; zero when null.
  const Vector* x0 = nullptr;
  // Stop as soon as the residual certifies the tolerance.
  bool early_exit = true;
  std::uint64_t seed = 0;
};

struct SolveResult {
  Vector x;
  Index iterations = 0;
  Index planned_iterations = 0;
  Index matvecs = 0;  // applications of N (each one B^{-1}A product)
  bool certified = false;
};

// |x - N^{-1} chi| <= tol. Nested backend: accelerated gradient descent on
// f(x) = 1/2 x^T N x - (B^{1/2} chi)^T x in explicit coordinates, run in
// implicit ones. Stochastic backend: svrg_shifted_cca.
SolveResult solve_shifted(const ShiftedOperator& op, const Vector& chi, double tol, const SolveOptions& options = {});

}  // namespace lazy_spectra
