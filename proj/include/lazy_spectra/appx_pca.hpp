#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lazy_spectra/implicit_basis.hpp"
#include "lazy_spectra/pencil.hpp"
#include "lazy_spectra/shifted_operator.hpp"

namespace lazy_spectra {

enum class ToleranceMode { practical, theory };
const char* tolerance_mode_name(ToleranceMode m);

// Iteration counts and per-step inversion accuracies of the two-sided
// shift-and-invert routine. Logarithms are natural.
struct AppxPcaSchedule {
  static constexpr double kDefaultPracticalFloor = 1e-8;

  Index dim = 1;
  double delta = 0.1;  // multiplicative error
  double eps = 0.01;   // accuracy
  double p = 0.1;      // failure probability
  double theta = 1.0;  // conditioning of the random start
  ToleranceMode mode = ToleranceMode::practical;
  double practical_floor = kDefaultPracticalFloor;  // floor is practical_floor * delta

  int m1 = 0;
  int m2 = 0;
  double log_eps1 = 0.0;  // log of (1/(64 m1)) (delta/48)^m1
  double log_eps2 = 0.0;  // log of (eps/(8 m2)) (delta/48)^m2
  int max_rounds = 0;     // ceil(log2(2/delta)) + 8

  static AppxPcaSchedule make(Index dim, double delta, double eps, double p, double theta,
                              ToleranceMode mode = ToleranceMode::practical,
                              double practical_floor = kDefaultPracticalFloor);

  double theory_eps1() const;
  double theory_eps2() const;
  // Effective accuracies of the two phases. Theory mode: absolute error of an
  // inverse application. Practical mode: error relative to the bound on the
  // inverse's norm, which keeps the target above round-off near lambda*.
  double eps1() const;
  double eps2() const;
  // Structural number of inner solves for a run with the given round count.
  Index expected_solves(int rounds) const { return static_cast<Index>(rounds) * (2 * m1 + 2) + m2; }
};

// Power method iteration count ceil(kappa/2 log(9 d theta/(p^2 eps))).
Index power_method_iterations(double kappa, double eps, double p, Index dim, double theta);
// Error amplification bound 2t max{1, l1^t} / ld^t for t inexact power steps
// on a PD matrix with extreme eigenvalues l1 >= ld > 0.
double power_error_amplification(double lambda1, double lambda_d, int t);

// w0 = v / sqrt(v^T B v) for Gaussian v. Redraws degenerate draws, at most 8
// attempts.
Vector ran_init(const SymmetricOperator& b, std::uint64_t seed);

// One approximate inverse application. step counts from 1; warm is the
// previous raw solve (empty before the first).
using InverseOracle = std::function<Vector(const Vector& w, const Vector& warm, Index step)>;

struct PowerResult {
  Vector w;     // B-normalized final iterate
  Vector last;  // last raw solve (unnormalized)
  double last_norm = 0.0;
};

// m steps of normalized inexact power iteration in implicit coordinates.
PowerResult inexact_power_run(const SymmetricOperator& b, const InverseOracle& invert, const Vector& w0, Index m);
Vector inexact_power(const SymmetricOperator& b, const InverseOracle& invert, const Vector& w0, Index m);

struct ShiftRound {
  int s = 0;
  double lambda = 0.0;  // shift after this round
  double delta = 0.0;   // gap proxy of this round
  Sign side = Sign::plus;
  double qa = 0.0;      // w_a^T B v_a
  double qb = 0.0;      // w_b^T B v_b
};

struct AppxPcaTrace {
  double lambda0 = 0.0;
  std::vector<ShiftRound> rounds;
  double final_lambda = 0.0;
  Index inner_solves = 0;
  Index inner_matvecs = 0;
  Index agd_iterations = 0;
  double max_condition = 0.0;
  std::uint64_t seed = 0;
};

struct AppxPcaResult {
  Sign sign = Sign::plus;
  Vector w;  // implicit, B-unit
  AppxPcaTrace trace;
};

struct AppxPcaContext {
  const Pencil* pencil = nullptr;
  const ImplicitBasis* basis = nullptr;
  InnerBackend backend = InnerBackend::nested;
  bool warm_start = true;
};

// Two-sided shift-and-invert. sign plus targets the largest positive
// eigenvalue of the deflated M, minus the most negative one.
AppxPcaResult appx_pca_pm(const AppxPcaContext& context, const AppxPcaSchedule& schedule, std::uint64_t seed);

}  // namespace lazy_spectra
