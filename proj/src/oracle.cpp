#include "lazy_spectra/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/rng.hpp"

namespace lazy_spectra::oracle {

namespace {

Eigen::SelfAdjointEigenSolver<DenseMatrix> pd_eigen(const DenseMatrix& b) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (b + b.transpose()));
  if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 1e-14 * std::max(hi, 1e-300))) throw PreconditionError("matrix is not positive definite");
  return es;
}

DenseMatrix symmetric(const DenseMatrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

DenseMatrix sqrt_pd(const DenseMatrix& b) {
  const auto es = pd_eigen(b);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

DenseMatrix inv_sqrt_pd(const DenseMatrix& b) {
  const auto es = pd_eigen(b);
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
}

DenseSpectrum dense_genev(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("dense_genev: A and B must be square of equal size");
  }
  const DenseMatrix w = inv_sqrt_pd(b);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(symmetric(w * a * w));
  if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
  const Index d = a.rows();
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  const Vector& ev = es.eigenvalues();
  const double scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    const double ai = std::abs(ev[i]), aj = std::abs(ev[j]);
    if (std::abs(ai - aj) > 1e-12 * scale) return ai > aj;
    if ((ev[i] > 0) != (ev[j] > 0)) return ev[i] > 0;
    return i < j;
  });
  DenseSpectrum out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Index c = 0; c < d; ++c) {
    out.values[c] = ev[order[static_cast<std::size_t>(c)]];
    out.vectors.col(c) = w * es.eigenvectors().col(order[static_cast<std::size_t>(c)]);
  }
  return out;
}

std::vector<DenseCcaPair> dense_cca(const DenseMatrix& x, const DenseMatrix& y, double gamma_x, double gamma_y) {
  if (x.rows() != y.rows()) throw DimensionError("dense_cca: X and Y row counts differ");
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  DenseMatrix sxx = x.transpose() * x * inv_n;
  sxx.diagonal().array() += gamma_x;
  DenseMatrix syy = y.transpose() * y * inv_n;
  syy.diagonal().array() += gamma_y;
  const DenseMatrix sxy = x.transpose() * y * inv_n;
  const DenseMatrix wx = inv_sqrt_pd(sxx);
  const DenseMatrix wy = inv_sqrt_pd(syy);
  Eigen::JacobiSVD<DenseMatrix> svd(wx * sxy * wy, Eigen::ComputeThinU | Eigen::ComputeThinV);
  std::vector<DenseCcaPair> pairs;
  for (Index i = 0; i < svd.singularValues().size(); ++i) {
    pairs.push_back({svd.singularValues()[i], wx * svd.matrixU().col(i), wy * svd.matrixV().col(i)});
  }
  return pairs;
}

std::vector<DenseCcaPair> dense_cca(const CcaProblem& problem) {
  return dense_cca(DenseMatrix(problem.x().values()), DenseMatrix(problem.y().values()), problem.gamma_x(),
                   problem.gamma_y());
}

Vector cca_block_spectrum(const CcaProblem& problem) {
  const DenseMatrix w = inv_sqrt_pd(problem.dense_b());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(symmetric(w * problem.dense_a() * w), Eigen::EigenvaluesOnly);
  Vector ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
  return ev;
}

DenseMatrix deflated_operator(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& v_implicit) {
  const DenseMatrix w = inv_sqrt_pd(b);
  const DenseMatrix m = symmetric(w * a * w);
  if (v_implicit.cols() == 0) return m;
  const DenseMatrix v = sqrt_pd(b) * v_implicit;
  const DenseMatrix p = DenseMatrix::Identity(a.rows(), a.rows()) - v * v.transpose();
  return symmetric(p * m * p);
}

double subspace_leakage(const DenseMatrix& v, const DenseMatrix& b, const DenseMatrix& w) {
  if (v.cols() == 0 || w.cols() == 0) return 0.0;
  return spectral_norm(v.transpose() * b * w);
}

double spectral_norm(const DenseMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  return svd.singularValues()[0];
}

double schatten_norm(const DenseMatrix& m, double q) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(symmetric(m), Eigen::EigenvaluesOnly);
  return std::pow(es.eigenvalues().cwiseAbs().array().pow(q).sum(), 1.0 / q);
}

namespace {

DenseMatrix random_symmetric(CounterRng& rng, Index d) {
  DenseMatrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = rng.gaussian();
  return symmetric(g) / std::sqrt(static_cast<double>(d));
}

DenseMatrix random_gaussian(CounterRng& rng, Index r, Index c) {
  DenseMatrix g(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) g(i, j) = rng.gaussian();
  return g;
}

DenseMatrix orthonormal_columns(const DenseMatrix& m) {
  Eigen::HouseholderQR<DenseMatrix> qr(m);
  return qr.householderQ() * DenseMatrix::Identity(m.rows(), m.cols());
}

DenseMatrix columns(const DenseMatrix& m, const std::vector<Index>& idx) {
  DenseMatrix out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Index>(j)) = m.col(idx[j]);
  return out;
}

void record(LemmaStats& st, double lhs, double bound) {
  ++st.instances;
  const double ratio = bound > 0.0 ? lhs / bound : (lhs <= 1e-12 ? 0.0 : INFINITY);
  st.max_ratio = std::max(st.max_ratio, ratio);
  if (lhs > bound * (1.0 + 1e-9) + 1e-12) ++st.violations;
}

Index random_dim(CounterRng& rng) { return 4 + static_cast<Index>(rng.uniform_index(27)); }

// Perturbed-subspace bound for projections.
void projection_instance(CounterRng& rng, LemmaStats& st) {
  const Index d = random_dim(rng);
  const DenseMatrix m = random_symmetric(rng, d);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
  std::vector<Index> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  for (Index i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_index(static_cast<std::uint64_t>(i + 1))]);
  const Index k = 1 + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(d - 1)));
  const Index s = 1 + static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(k)));
  const DenseMatrix uperp = columns(es.eigenvectors(), {perm.begin(), perm.begin() + k});
  const DenseMatrix u = columns(es.eigenvectors(), {perm.begin() + k, perm.end()});
  const double t = std::pow(10.0, -4.0 + 3.5 * rng.uniform());
  DenseMatrix v = orthonormal_columns(uperp * random_gaussian(rng, k, s) + t * u * random_gaussian(rng, d - k, s));
  const double eps = spectral_norm(v.transpose() * u);
  if (!(eps < 0.5)) return;
  const DenseMatrix q = orthonormal_columns(uperp * (uperp.transpose() * v));
  const DenseMatrix id = DenseMatrix::Identity(d, d);
  const DenseMatrix pq = id - q * q.transpose();
  const DenseMatrix pv = id - v * v.transpose();
  const double lhs = spectral_norm(pq * m * pq - pv * m * pv);
  record(st, lhs, 13.0 * eps * spectral_norm(m));
}

void wedin_instance(CounterRng& rng, LemmaStats& st) {
  const Index d = random_dim(rng);
  const DenseMatrix a = random_symmetric(rng, d);
  const double target = std::pow(10.0, -4.0 + 3.5 * rng.uniform());
  DenseMatrix e = random_symmetric(rng, d);
  e *= target / spectral_norm(e);
  const DenseMatrix b = a + e;
  const double eps = spectral_norm(a - b);
  const double mu = 0.8 * rng.uniform();
  const double tau = 0.01 + 0.5 * rng.uniform();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> ea(a), eb(b);
  std::vector<Index> iu, iv;
  for (Index i = 0; i < d; ++i) {
    if (std::abs(ea.eigenvalues()[i]) <= mu) iu.push_back(i);
    if (std::abs(eb.eigenvalues()[i]) >= mu + tau) iv.push_back(i);
  }
  if (iu.empty() || iv.empty()) return;
  const double lhs = spectral_norm(columns(ea.eigenvectors(), iu).transpose() * columns(eb.eigenvectors(), iv));
  record(st, lhs, eps / tau);
}

void embedding_instance(CounterRng& rng, LemmaStats& st) {
  const Index d = random_dim(rng);
  const DenseMatrix m = random_symmetric(rng, d);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
  const double mu = 0.9 * rng.uniform() * es.eigenvalues().cwiseAbs().maxCoeff();
  std::vector<Index> iu, iperp;
  for (Index i = 0; i < d; ++i) (std::abs(es.eigenvalues()[i]) <= mu ? iu : iperp).push_back(i);
  if (iu.empty() || iperp.empty()) return;
  const DenseMatrix u = columns(es.eigenvectors(), iu);
  const DenseMatrix up = columns(es.eigenvectors(), iperp);
  const double t = std::pow(10.0, -4.0 + 3.5 * rng.uniform());
  Vector v = up * random_gaussian(rng, up.cols(), 1) + t * u * random_gaussian(rng, u.cols(), 1);
  v.normalize();
  const double eps = (v.transpose() * u).norm();
  if (!(eps <= 0.5)) return;
  const double tau = 0.01 + 0.5 * rng.uniform();
  const DenseMatrix id = DenseMatrix::Identity(d, d);
  const DenseMatrix p = id - v * v.transpose();
  // eigenvectors of M' inside the complement of v
  const DenseMatrix h = orthonormal_columns([&] {
    DenseMatrix basis(d, d);
    basis.col(0) = v;
    basis.rightCols(d - 1) = random_gaussian(rng, d, d - 1);
    return basis;
  }()).rightCols(d - 1);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> ec(symmetric(h.transpose() * p * m * p * h));
  std::vector<Index> i1;
  for (Index i = 0; i < d - 1; ++i)
    if (std::abs(ec.eigenvalues()[i]) <= mu + tau) i1.push_back(i);
  const DenseMatrix v1 = h * columns(ec.eigenvectors(), i1);
  const DenseMatrix q = v1.transpose() * u;
  const double lhs = spectral_norm(u - v1 * q);
  const double mn = spectral_norm(m);
  record(st, lhs, std::sqrt(169.0 * eps * eps * mn * mn / (tau * tau) + eps * eps));
}

}  // namespace

LemmaReport check_algebra_lemmas(Index samples, std::uint64_t seed) {
  LemmaReport rep;
  rep.seed = seed;
  rep.projection.name = "approximate-projection";
  rep.wedin.name = "gap-free-wedin";
  rep.embedding.name = "eigenspace-embedding";
  CounterRng rng(seed, 0xc0de);
  // instances that do not meet a lemma's hypotheses are redrawn
  while (rep.projection.instances < samples) projection_instance(rng, rep.projection);
  while (rep.wedin.instances < samples) wedin_instance(rng, rep.wedin);
  while (rep.embedding.instances < samples) embedding_instance(rng, rep.embedding);
  return rep;
}

}  // namespace lazy_spectra::oracle
