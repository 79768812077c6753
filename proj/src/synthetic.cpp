#include "lazy_spectra/synthetic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>

#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/oracle.hpp"
#include "lazy_spectra/rng.hpp"

namespace lazy_spectra::synthetic {

namespace {

DenseMatrix gaussian_matrix(CounterRng& rng, Index r, Index c) {
  DenseMatrix g(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) g(i, j) = rng.gaussian();
  return g;
}

DenseMatrix random_orthogonal(CounterRng& rng, Index d) {
  Eigen::HouseholderQR<DenseMatrix> qr(gaussian_matrix(rng, d, d));
  DenseMatrix q = qr.householderQ();
  // sign fix so the distribution is Haar
  const auto& r = qr.matrixQR();
  for (Index j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

// Q diag(s) Q^T with log-uniform s in [1, kappa], rescaled to geometric mean 1.
DenseMatrix random_spd(CounterRng& rng, Index d, double kappa) {
  const DenseMatrix q = random_orthogonal(rng, d);
  Vector s(d);
  for (Index i = 0; i < d; ++i) s[i] = std::pow(kappa, i == 0 ? 0.0 : (i == d - 1 ? 1.0 : rng.uniform()));
  s /= std::sqrt(s.minCoeff() * s.maxCoeff());
  return q * s.asDiagonal() * q.transpose();
}

DenseMatrix metric(CounterRng& rng, Index d, MetricKind kind, double kappa) {
  switch (kind) {
    case MetricKind::identity:
      return DenseMatrix::Identity(d, d);
    case MetricKind::diagonal: {
      Vector s(d);
      for (Index i = 0; i < d; ++i) s[i] = 1.0 + (kappa - 1.0) * rng.uniform();
      return s.asDiagonal();
    }
    case MetricKind::tridiagonal: {
      // c I + off-diagonals c' with |2c'| < c; spectrum in [c - 2c', c + 2c'].
      const double off = (kappa - 1.0) / (kappa + 1.0) * 0.5;
      DenseMatrix b = DenseMatrix::Identity(d, d);
      for (Index i = 0; i + 1 < d; ++i) b(i, i + 1) = b(i + 1, i) = off * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      return b;
    }
  }
  throw ValueError("unknown metric kind");
}

}  // namespace

PlantedGenEv planted_genev(const Vector& eigenvalues, std::uint64_t seed, MetricKind kind, double b_kappa) {
  const Index d = eigenvalues.size();
  if (d < 1) throw DimensionError("planted_genev: empty spectrum");
  if (eigenvalues.cwiseAbs().maxCoeff() > 1.0) throw ValueError("planted_genev: |eigenvalue| > 1");
  if (!(b_kappa >= 1.0)) throw ValueError("planted_genev: b_kappa < 1");
  CounterRng rng(seed, 11);
  PlantedGenEv out;
  out.eigenvalues = eigenvalues;
  out.dense_b = metric(rng, d, kind, b_kappa);
  const DenseMatrix root = oracle::sqrt_pd(out.dense_b);
  const DenseMatrix q = random_orthogonal(rng, d);
  DenseMatrix a = root * q * eigenvalues.asDiagonal() * q.transpose() * root;
  out.dense_a = 0.5 * (a + a.transpose());
  out.a = SymmetricMatrix::from_dense(out.dense_a);
  out.b = SymmetricMatrix::from_dense(out.dense_b);
  return out;
}

Vector planted_spectrum(Index d, const std::vector<double>& leading, double tail_max, std::uint64_t seed) {
  if (static_cast<Index>(leading.size()) > d) throw DimensionError("planted_spectrum: too many leading values");
  CounterRng rng(seed, 12);
  Vector ev(d);
  for (std::size_t i = 0; i < leading.size(); ++i) ev[static_cast<Index>(i)] = leading[i];
  for (Index i = static_cast<Index>(leading.size()); i < d; ++i) {
    ev[i] = tail_max * rng.uniform() * (rng.uniform() < 0.5 ? -1.0 : 1.0);
  }
  return ev;
}

PlantedGenEv gap_instance(Index d, double gap, std::uint64_t seed) {
  if (!(gap > 0.0 && gap < 1.0)) throw ValueError("gap_instance: gap must lie in (0, 1)");
  const double second = 1.0 - gap;
  Vector ev = planted_spectrum(d, {1.0, second}, second, seed);
  return planted_genev(ev, seed, MetricKind::diagonal, 3.0);
}

PlantedCca planted_cca(Index n, Index dx, Index dy, const std::vector<double>& sigmas, std::uint64_t seed,
                       CcaNoise noise, double mix_kappa) {
  const Index r = static_cast<Index>(sigmas.size());
  if (r > std::min(dx, dy)) throw DimensionError("planted_cca: more correlations than view dimensions");
  for (double s : sigmas)
    if (!(s >= 0.0 && s < 1.0)) throw ValueError("planted_cca: correlations must lie in [0, 1)");
  const Index d = dx + dy;
  CounterRng rng(seed, 13);
  DenseMatrix z;
  if (noise == CcaNoise::exact) {
    if (n < d) throw DimensionError("planted_cca: exact mode needs n >= dx + dy");
    DenseMatrix g = gaussian_matrix(rng, n, d);
    const DenseMatrix cov = g.transpose() * g / static_cast<double>(n);
    g = g * oracle::inv_sqrt_pd(cov);
    DenseMatrix c = DenseMatrix::Identity(d, d);
    for (Index i = 0; i < r; ++i) c(i, dx + i) = c(dx + i, i) = sigmas[static_cast<std::size_t>(i)];
    z = g * oracle::sqrt_pd(c);
  } else {
    z = gaussian_matrix(rng, n, d);
    const DenseMatrix h = gaussian_matrix(rng, n, r);
    for (Index i = 0; i < r; ++i) {
      const double s = sigmas[static_cast<std::size_t>(i)];
      z.col(i) = std::sqrt(s) * h.col(i) + std::sqrt(1.0 - s) * z.col(i);
      z.col(dx + i) = std::sqrt(s) * h.col(i) + std::sqrt(1.0 - s) * z.col(dx + i);
    }
  }
  const DenseMatrix mx = random_spd(rng, dx, mix_kappa) * random_orthogonal(rng, dx);
  const DenseMatrix my = random_spd(rng, dy, mix_kappa) * random_orthogonal(rng, dy);
  PlantedCca out;
  out.x = DataMatrix(RowMatrix(z.leftCols(dx) * mx));
  out.y = DataMatrix(RowMatrix(z.rightCols(dy) * my));
  out.sigmas = Vector::Map(sigmas.data(), r);
  std::sort(out.sigmas.data(), out.sigmas.data() + r, std::greater<double>());
  return out;
}

DenseMatrix random_symmetric_unit(Index d, std::uint64_t seed) {
  CounterRng rng(seed, 14);
  const DenseMatrix g = gaussian_matrix(rng, d, d);
  DenseMatrix m = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m, Eigen::EigenvaluesOnly);
  return m / es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace lazy_spectra::synthetic
