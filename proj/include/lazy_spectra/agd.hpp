#pragma once

#include <functional>
#include <vector>

#include "lazy_spectra/types.hpp"

namespace lazy_spectra {

// L-smooth, sigma-strongly convex objective accessed through a (possibly
// inexact) gradient.
struct QuadraticOracle {
  std::function<void(const Vector& x, Vector& grad)> gradient;
  double smoothness = 1.0;        // L
  double strong_convexity = 1.0;  // sigma
  double gradient_error = 0.0;    // bound on |grad error|, informational

  double tau() const;  // 2 / (1 + sqrt(8 L / sigma + 1))
  double eta() const;  // 1 / (tau L)
  void validate() const;
};

struct AgdOptions {
  // Called with (x_{k+1}, gradient at x_{k+1}); returning true stops the run
  // and returns x_{k+1}.
  std::function<bool(const Vector& x, const Vector& grad)> stop;
  // Record y_k after every iteration (tests).
  bool record = false;
};

struct AgdResult {
  Vector x;
  Index iterations = 0;
  bool stopped_early = false;
  std::vector<Vector> history;
};

// Accelerated gradient descent with three sequences:
//   x' = tau z + (1 - tau) y
//   y' = x' - g / L
//   z' = (z + eta sigma x' - eta g) / (1 + eta sigma)
// Returns y_T.
Vector agd_inexact(const QuadraticOracle& oracle, const Vector& x0, Index iterations);
AgdResult agd_run(const QuadraticOracle& oracle, const Vector& x0, Index iterations, const AgdOptions& options);

// Iterations so that 1.5 (1 - tau)^T initial_gap <= target_gap.
Index agd_planned_iterations(double tau, double initial_gap, double target_gap);

}  // namespace lazy_spectra
