#include "lazy_spectra/lazy_ev.hpp"

#include <algorithm>
#include <cmath>

#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/rng.hpp"

namespace lazy_spectra {

const char* mode_name(SpectralMode m) { return m == SpectralMode::gap_dependent ? "gap-dependent" : "gap-free"; }

SpectralMode parse_mode(const std::string& name) {
  if (name == "gap-dependent" || name == "gap") return SpectralMode::gap_dependent;
  if (name == "gap-free") return SpectralMode::gap_free;
  throw ValueError("unknown mode '" + name + "' (expected gap-dependent or gap-free)");
}

double SolverConfig::effective_delta() const {
  if (delta > 0.0) return delta;
  return mode == SpectralMode::gap_dependent ? gap : eps;
}

double SolverConfig::effective_eps_pca() const {
  if (eps_pca > 0.0) return eps_pca;
  return std::min(1e-3, eps * eps * effective_delta() / (16.0 * static_cast<double>(k)));
}

void SolverConfig::validate() const {
  if (k < 1) throw ValueError("k must be at least 1");
  if (mode == SpectralMode::gap_dependent && !(gap > 0.0 && gap < 1.0)) {
    throw ValueError("gap-dependent mode needs gap in (0, 1)");
  }
  if (!(eps > 0.0 && eps < 1.0)) throw ValueError("eps must lie in (0, 1)");
  const double d = effective_delta();
  if (!(d > 0.0 && d < 1.0)) throw ValueError("delta must lie in (0, 1)");
  const double e = effective_eps_pca();
  if (!(e > 0.0 && e < 1.0)) throw ValueError("eps_pca must lie in (0, 1)");
  if (!(p > 0.0 && p < 1.0)) throw ValueError("p must lie in (0, 1)");
}

void check_band_precondition(const Pencil& pencil, std::uint64_t seed) {
  CounterRng rng(seed, 0xba9d);
  for (int i = 0; i < 20; ++i) {
    const Vector w = rng.gaussian_vector(pencil.dim());
    const double qa = w.dot(pencil.a() * w);
    const double qb = w.dot(pencil.b() * w);
    if (!(qb > 0.0)) throw PreconditionError("B is not positive definite");
    if (std::abs(qa) > (1.0 + 1e-9) * qb) {
      throw PreconditionError("A is outside [-B, B]: |w^T A w| / w^T B w = " + std::to_string(std::abs(qa) / qb));
    }
  }
}

SpectralResult lazy_ev(const Pencil& pencil, const SolverConfig& config) {
  config.validate();
  const Index d = pencil.dim();
  if (config.k > d) throw ValueError("k exceeds the dimension");
  check_band_precondition(pencil, config.seed);

  const MetricBounds mb = pencil.metric_bounds();
  const double delta = config.effective_delta();
  SpectralResult res;
  res.config = config;
  res.seed = config.seed;
  res.basis = ImplicitBasis(d);
  res.schedule = AppxPcaSchedule::make(d, 0.5 * delta, config.effective_eps_pca(),
                                       config.p / static_cast<double>(config.k), std::max(1.0, mb.kappa()),
                                       config.tolerance, config.practical_floor);

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
    res.basis.project_out_in_place(v);
    const double nrm = b_norm(pencil.b(), v);
    if (!(nrm > 1e-8)) {
      throw AccuracyError("deflation round " + std::to_string(s) + ": direction vanished after projection");
    }
    v /= nrm;
    const Vector bv = pencil.b() * v;
    const Vector av = pencil.a() * v;
    res.basis.append(v, bv, av);
    res.rayleigh.push_back(v.dot(av));
    res.signs.push_back(ar.sign);
    res.inner_solves += ar.trace.inner_solves;
    res.inner_matvecs += ar.trace.inner_matvecs;
    res.traces.push_back(std::move(ar.trace));
  }
  return res;
}

SpectralResult lazy_ev(const SymmetricMatrix& a, const SymmetricMatrix& b, const SolverConfig& config) {
  // non-owning handles; the pencil does not outlive this call
  MatrixPencil pencil(std::shared_ptr<const SymmetricMatrix>(&a, [](const SymmetricMatrix*) {}),
                      std::shared_ptr<const SymmetricMatrix>(&b, [](const SymmetricMatrix*) {}));
  return lazy_ev(pencil, config);
}

SpectralResult genev_gap_dependent(const SymmetricMatrix& a, const SymmetricMatrix& b, Index k, double gap, double eps,
                                   double p, std::uint64_t seed) {
  SolverConfig c;
  c.k = k;
  c.mode = SpectralMode::gap_dependent;
  c.gap = gap;
  c.eps = eps;
  c.p = p;
  c.seed = seed;
  return lazy_ev(a, b, c);
}

SpectralResult genev_gap_free(const SymmetricMatrix& a, const SymmetricMatrix& b, Index k, double eps, double p,
                              std::uint64_t seed) {
  SolverConfig c;
  c.k = k;
  c.mode = SpectralMode::gap_free;
  c.eps = eps;
  c.p = p;
  c.seed = seed;
  return lazy_ev(a, b, c);
}

}  // namespace lazy_spectra
