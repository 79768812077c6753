#include "lazy_spectra/lazy_cca.hpp"

#include <cmath>

#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/rng.hpp"

namespace lazy_spectra {

CcaProblem build_cca_problem(DataMatrix x, DataMatrix y, double gamma_x, double gamma_y) {
  return CcaProblem(std::move(x), std::move(y), gamma_x, gamma_y);
}

CcaResult lazy_cca(const CcaProblem& problem, const SolverConfig& config) {
  config.validate();
  if (config.k > std::min(problem.dx(), problem.dy())) throw ValueError("k exceeds min(dx, dy)");
  auto handle = std::shared_ptr<const CcaProblem>(&problem, [](const CcaProblem*) {});
  const CcaPencil pencil(handle, config.backend);
  const MetricBounds mb = pencil.metric_bounds();
  const Index d = problem.dim(), dx = problem.dx(), dy = problem.dy();
  const double delta = config.effective_delta();

  CcaResult res;
  res.config = config;
  res.seed = config.seed;
  res.basis = ImplicitBasis(d);
  res.schedule = AppxPcaSchedule::make(d, 0.5 * delta, config.effective_eps_pca(),
                                       config.p / static_cast<double>(config.k), std::max(1.0, mb.kappa()),
                                       config.tolerance, config.practical_floor);
  const CcaBlockOperator bop(problem, BlockOp::b, true);
  const CcaBlockOperator aop(problem, BlockOp::a, true);
  std::vector<Vector> xis, zetas;

  for (Index s = 1; s <= config.k; ++s) {
    AppxPcaContext ctx;
    ctx.pencil = &pencil;
    ctx.basis = &res.basis;
    ctx.backend = config.inner;
    ctx.warm_start = config.warm_start;
    AppxPcaResult ar;
    try {
      ar = appx_pca_pm(ctx, res.schedule, CounterRng::derive(config.seed, static_cast<std::uint64_t>(s)));
    } catch (const ScheduleError& e) {
      res.residual_exhausted = true;
      res.exhausted_reason = "round " + std::to_string(s) + ": " + e.what();
      break;
    } catch (const Error&) {
      rethrow_with_context("deflation round " + std::to_string(s) + ": ");
    }
    Vector v = ar.w;
    res.basis.project_out_in_place(v);
    const double vn = b_norm(bop, v);
    if (!(vn > 1e-8)) throw AccuracyError("deflation round " + std::to_string(s) + ": direction vanished");
    v /= vn;
    res.raw_rayleigh.push_back(std::abs(v.dot(aop * v)));

    Vector xi = v.head(dx);
    Vector zeta = v.tail(dy);
    // blockwise cleanup against earlier pairs (each block has Sxx-norm^2 1/2)
    for (std::size_t j = 0; j < xis.size(); ++j) {
      xi -= 2.0 * xis[j].dot(problem.sxx(xi)) * xis[j];
      zeta -= 2.0 * zetas[j].dot(problem.syy(zeta)) * zetas[j];
    }
    const double nx2 = xi.dot(problem.sxx(xi));
    const double ny2 = zeta.dot(problem.syy(zeta));
    const double share = nx2 / (nx2 + ny2);
    res.x_block_share.push_back(share);
    if (!(share >= kRescaleWindowLow && share <= kRescaleWindowHigh)) {
      throw AccuracyError("deflation round " + std::to_string(s) + ": block norms unbalanced (x share " +
                          std::to_string(share) + "); inner solves too loose");
    }
    xi /= std::sqrt(2.0 * nx2);
    zeta /= std::sqrt(2.0 * ny2);

    Vector c1(d), c2(d);
    c1 << xi, zeta;
    c2 << -xi, zeta;
    const Vector ac1 = aop * c1;
    res.rescaled_rayleigh.push_back(std::abs(c1.dot(ac1)));
    res.basis.append(c1, bop * c1, ac1);
    res.basis.append(c2, bop * c2, aop * c2);
    xis.push_back(xi);
    zetas.push_back(zeta);
    res.signs.push_back(ar.sign);
    res.inner_solves += ar.trace.inner_solves;
    res.inner_matvecs += ar.trace.inner_matvecs;
    res.traces.push_back(std::move(ar.trace));
  }
  res.pairs = recover_canonical_pairs(res.basis, problem);
  return res;
}

CcaResult lazy_cca(const CcaProblem& problem, Index k, double delta, double eps_pca, double p, std::uint64_t seed) {
  SolverConfig c;
  c.k = k;
  c.mode = SpectralMode::gap_free;
  c.eps = std::min(0.5, delta);
  c.delta = delta;
  c.eps_pca = eps_pca;
  c.p = p;
  c.seed = seed;
  return lazy_cca(problem, c);
}

CcaResult cca_gap_dependent(const CcaProblem& problem, Index k, double gap, double eps, double p, std::uint64_t seed,
                            Backend backend) {
  SolverConfig c;
  c.k = k;
  c.mode = SpectralMode::gap_dependent;
  c.gap = gap;
  c.eps = eps;
  c.p = p;
  c.seed = seed;
  c.backend = backend;
  return lazy_cca(problem, c);
}

CcaResult cca_gap_free(const CcaProblem& problem, Index k, double eps, double p, std::uint64_t seed, Backend backend) {
  SolverConfig c;
  c.k = k;
  c.mode = SpectralMode::gap_free;
  c.eps = eps;
  c.p = p;
  c.seed = seed;
  c.backend = backend;
  return lazy_cca(problem, c);
}

std::vector<CanonicalPair> recover_canonical_pairs(const ImplicitBasis& basis, const CcaProblem& problem) {
  if (basis.dim() != problem.dim()) throw DimensionError("basis does not match the CCA problem");
  std::vector<CanonicalPair> pairs;
  const double r2 = std::sqrt(2.0);
  for (Index j = 0; j < basis.size(); j += 2) {
    const Vector col = basis.vectors().col(j);
    CanonicalPair pair;
    pair.phi = r2 * col.head(problem.dx());
    pair.psi = r2 * col.tail(problem.dy());
    pair.sigma = pair.phi.dot(problem.sxy(pair.psi));
    if (pair.sigma < 0.0) {
      pair.phi = -pair.phi;
      pair.sigma = -pair.sigma;
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace lazy_spectra
