#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lazy_spectra/cca_problem.hpp"
#include "lazy_spectra/types.hpp"

// Dense ground truth and numeric validators.
namespace lazy_spectra::oracle {

struct DenseSpectrum {
  Vector values;        // sorted by |value| descending; ties positive first
  DenseMatrix vectors;  // B-orthonormal columns
};

// Full generalized spectrum of (A, B) through B^{-1/2} A B^{-1/2}.
DenseSpectrum dense_genev(const DenseMatrix& a, const DenseMatrix& b);

// Symmetric square root and inverse square root of a PD matrix.
DenseMatrix sqrt_pd(const DenseMatrix& b);
DenseMatrix inv_sqrt_pd(const DenseMatrix& b);

struct DenseCcaPair {
  double sigma;
  Vector phi;
  Vector psi;
};

// SVD of Sxx^{-1/2} Sxy Syy^{-1/2}; pairs sorted by sigma descending.
std::vector<DenseCcaPair> dense_cca(const DenseMatrix& x, const DenseMatrix& y, double gamma_x, double gamma_y);
std::vector<DenseCcaPair> dense_cca(const CcaProblem& problem);

// Eigenvalues of the explicit block M = B^{-1/2} A B^{-1/2} of a CCA problem,
// sorted descending.
Vector cca_block_spectrum(const CcaProblem& problem);

// Explicit deflated operator (I - V V^T) M (I - V V^T) with V = B^{1/2} Vimp.
DenseMatrix deflated_operator(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& v_implicit);
// |V^T B W|_2
double subspace_leakage(const DenseMatrix& v, const DenseMatrix& b, const DenseMatrix& w);
double spectral_norm(const DenseMatrix& m);
// Schatten-q norm of a symmetric matrix.
double schatten_norm(const DenseMatrix& m, double q);

struct LemmaStats {
  std::string name;
  Index instances = 0;
  Index violations = 0;
  double max_ratio = 0.0;  // max of (left side) / (bound)
};

struct LemmaReport {
  std::uint64_t seed = 0;
  LemmaStats projection;  // approximate projection bound (13 eps |M|)
  LemmaStats wedin;       // gap-free Wedin bound (eps / tau)
  LemmaStats embedding;   // embedding bound sqrt(169 eps^2 |M|^2 / tau^2 + eps^2)
  Index total_violations() const { return projection.violations + wedin.violations + embedding.violations; }
};

LemmaReport check_algebra_lemmas(Index samples, std::uint64_t seed);

}  // namespace lazy_spectra::oracle
