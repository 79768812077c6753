#pragma once

#include <cstdint>
#include <vector>

#include "lazy_spectra/cca_problem.hpp"
#include "lazy_spectra/symmetric_matrix.hpp"
#include "lazy_spectra/types.hpp"

// Seeded test instances with planted spectra.
namespace lazy_spectra::synthetic {

enum class MetricKind { identity, diagonal, tridiagonal };

struct PlantedGenEv {
  SymmetricMatrix a;
  SymmetricMatrix b;
  DenseMatrix dense_a;
  DenseMatrix dense_b;
  Vector eigenvalues;  // planted generalized eigenvalues, in generation order
};

// A = B^{1/2} Q diag(eigenvalues) Q^T B^{1/2} with Haar-like Q; B has
// condition number about b_kappa. Requires |eigenvalues| <= 1.
PlantedGenEv planted_genev(const Vector& eigenvalues, std::uint64_t seed, MetricKind metric = MetricKind::diagonal,
                           double b_kappa = 3.0);

// leading values followed by d - len(leading) tail values drawn uniformly
// with |value| <= tail_max and random sign.
Vector planted_spectrum(Index d, const std::vector<double>& leading, double tail_max, std::uint64_t seed);

// Instance for the gap-scaling benchmark: lambda_1 = 1, lambda_2 = 1 - gap,
// remaining values spread over [-(1 - gap), 1 - gap].
PlantedGenEv gap_instance(Index d, double gap, std::uint64_t seed);

enum class CcaNoise { exact, sampled };

struct PlantedCca {
  DataMatrix x;
  DataMatrix y;
  Vector sigmas;  // planted canonical correlations, descending
};

// Two views with the given canonical correlations. exact: the empirical
// covariances match the plant exactly (needs n >= dx + dy); sampled: latent
// factor model, correlations hold in expectation. Each view is mixed by a
// random invertible map with condition number about mix_kappa.
PlantedCca planted_cca(Index n, Index dx, Index dy, const std::vector<double>& sigmas, std::uint64_t seed,
                       CcaNoise noise = CcaNoise::exact, double mix_kappa = 4.0);

// Random symmetric d x d matrix with spectral norm 1.
DenseMatrix random_symmetric_unit(Index d, std::uint64_t seed);

}  // namespace lazy_spectra::synthetic
