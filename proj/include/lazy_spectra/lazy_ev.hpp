#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lazy_spectra/appx_pca.hpp"
#include "lazy_spectra/implicit_basis.hpp"
#include "lazy_spectra/pencil.hpp"

namespace lazy_spectra {

enum class SpectralMode { gap_dependent, gap_free };
const char* mode_name(SpectralMode m);
SpectralMode parse_mode(const std::string& name);

// Settings shared by the GenEV and CCA drivers.
struct SolverConfig {
  Index k = 1;
  SpectralMode mode = SpectralMode::gap_free;
  double gap = 0.0;      // gap-dependent mode
  double eps = 0.1;      // target accuracy
  double delta = 0.0;    // multiplicative error override; 0 derives it from the mode
  double eps_pca = 0.0;  // inner accuracy override; 0 uses the default
  double p = 0.1;
  Backend backend = Backend::cg;
  InnerBackend inner = InnerBackend::nested;
  ToleranceMode tolerance = ToleranceMode::practical;
  double practical_floor = AppxPcaSchedule::kDefaultPracticalFloor;
  bool warm_start = true;
  std::uint64_t seed = 0;

  // gap for gap-dependent runs, eps for gap-free ones, unless overridden.
  double effective_delta() const;
  // min(1e-3, eps^2 delta / (16 k)) unless overridden.
  double effective_eps_pca() const;
  void validate() const;
};

using GenEvConfig = SolverConfig;

struct SpectralResult {
  ImplicitBasis basis;
  std::vector<double> rayleigh;  // v_s^T A v_s
  std::vector<Sign> signs;
  std::vector<AppxPcaTrace> traces;
  std::uint64_t seed = 0;
  bool residual_exhausted = false;
  std::string exhausted_reason;
  AppxPcaSchedule schedule;
  SolverConfig config;
  Index inner_solves = 0;
  Index inner_matvecs = 0;

  double orthonormality_error() const { return basis.orthonormality_error(); }
};

// Checks |w^T A w| <= (1 + 1e-9) w^T B w on 20 random directions.
void check_band_precondition(const Pencil& pencil, std::uint64_t seed);

SpectralResult lazy_ev(const Pencil& pencil, const SolverConfig& config);
SpectralResult lazy_ev(const SymmetricMatrix& a, const SymmetricMatrix& b, const SolverConfig& config);

SpectralResult genev_gap_dependent(const SymmetricMatrix& a, const SymmetricMatrix& b, Index k, double gap, double eps,
                                   double p, std::uint64_t seed);
SpectralResult genev_gap_free(const SymmetricMatrix& a, const SymmetricMatrix& b, Index k, double eps, double p,
                              std::uint64_t seed);

}  // namespace lazy_spectra
