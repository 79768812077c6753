#include "lazy_spectra/agd.hpp"

#include <cmath>

#include "lazy_spectra/errors.hpp"

namespace lazy_spectra {

double QuadraticOracle::tau() const { return 2.0 / (1.0 + std::sqrt(8.0 * smoothness / strong_convexity + 1.0)); }

double QuadraticOracle::eta() const { return 1.0 / (tau() * smoothness); }

void QuadraticOracle::validate() const {
  if (!gradient) throw ValueError("quadratic oracle has no gradient");
  if (!(strong_convexity > 0.0) || !(smoothness >= strong_convexity) || !std::isfinite(smoothness)) {
    throw ValueError("quadratic oracle needs 0 < sigma <= L");
  }
}

AgdResult agd_run(const QuadraticOracle& oracle, const Vector& x0, Index iterations, const AgdOptions& options) {
  oracle.validate();
  const double tau = oracle.tau();
  const double eta = oracle.eta();
  const double sigma = oracle.strong_convexity;
  const double inv_l = 1.0 / oracle.smoothness;
  const double z_scale = 1.0 / (1.0 + eta * sigma);

  AgdResult res;
  Vector y = x0;
  Vector z = x0;
  Vector x(x0.size());
  Vector g(x0.size());
  for (Index k = 0; k < iterations; ++k) {
    x = tau * z + (1.0 - tau) * y;
    oracle.gradient(x, g);
    if (!g.allFinite()) throw NonConvergenceError("accelerated gradient descent overflowed", INFINITY);
    ++res.iterations;
    if (options.stop && options.stop(x, g)) {
      res.x = x;
      res.stopped_early = true;
      return res;
    }
    y = x - inv_l * g;
    z = z_scale * (z + eta * sigma * x - eta * g);
    if (options.record) res.history.push_back(y);
  }
  res.x = std::move(y);
  return res;
}

Vector agd_inexact(const QuadraticOracle& oracle, const Vector& x0, Index iterations) {
  return agd_run(oracle, x0, iterations, {}).x;
}

Index agd_planned_iterations(double tau, double initial_gap, double target_gap) {
  if (!(initial_gap > 0.0)) return 0;
  const double ratio = 1.5 * initial_gap / target_gap;
  if (ratio <= 1.0) return 1;
  return static_cast<Index>(std::ceil(std::log(ratio) / -std::log1p(-tau)));
}

}  // namespace lazy_spectra
