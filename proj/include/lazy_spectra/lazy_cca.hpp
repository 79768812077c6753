#pragma once

#include <cstdint>
#include <vector>

#include "lazy_spectra/cca_problem.hpp"
#include "lazy_spectra/lazy_ev.hpp"

namespace lazy_spectra {

struct CanonicalPair {
  Vector phi;  // length dx, phi^T Sxx phi = 1
  Vector psi;  // length dy, psi^T Syy psi = 1
  double sigma = 0.0;  // phi^T Sxy psi >= 0
};

struct CcaResult {
  std::vector<CanonicalPair> pairs;
  ImplicitBasis basis;  // 2k columns: (xi; zeta), (-xi; zeta) per round
  std::vector<Sign> signs;
  std::vector<AppxPcaTrace> traces;
  // |v^T A v| of the raw direction and of the rescaled pair column per round
  std::vector<double> raw_rayleigh;
  std::vector<double> rescaled_rayleigh;
  std::vector<double> x_block_share;  // |xi'|^2_Sxx / |v|^2_B per round
  std::uint64_t seed = 0;
  bool residual_exhausted = false;
  std::string exhausted_reason;
  AppxPcaSchedule schedule;
  SolverConfig config;
  Index inner_solves = 0;
  Index inner_matvecs = 0;
};

inline constexpr double kRescaleWindowLow = 0.05;
inline constexpr double kRescaleWindowHigh = 0.95;

CcaProblem build_cca_problem(DataMatrix x, DataMatrix y, double gamma_x = 0.0, double gamma_y = 0.0);

// config.backend picks the B^{-1}A path (cg or svrg); config.inner picks
// nested or the direct stochastic shifted solver.
CcaResult lazy_cca(const CcaProblem& problem, const SolverConfig& config);
CcaResult lazy_cca(const CcaProblem& problem, Index k, double delta, double eps_pca, double p, std::uint64_t seed);

CcaResult cca_gap_dependent(const CcaProblem& problem, Index k, double gap, double eps, double p, std::uint64_t seed,
                            Backend backend = Backend::cg);
CcaResult cca_gap_free(const CcaProblem& problem, Index k, double eps, double p, std::uint64_t seed,
                       Backend backend = Backend::cg);

std::vector<CanonicalPair> recover_canonical_pairs(const ImplicitBasis& basis, const CcaProblem& problem);

}  // namespace lazy_spectra
