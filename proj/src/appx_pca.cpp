#include "lazy_spectra/appx_pca.hpp"

#include <algorithm>
#include <cmath>

#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/rng.hpp"

namespace lazy_spectra {

const char* tolerance_mode_name(ToleranceMode m) { return m == ToleranceMode::theory ? "theory" : "practical"; }

AppxPcaSchedule AppxPcaSchedule::make(Index dim, double delta, double eps, double p, double theta, ToleranceMode mode,
                                      double practical_floor) {
  if (dim < 1) throw ValueError("schedule: dimension must be positive");
  if (!(delta > 0.0 && delta <= 0.5)) throw ValueError("schedule: delta must lie in (0, 0.5]");
  if (!(eps > 0.0 && eps < 1.0)) throw ValueError("schedule: eps must lie in (0, 1)");
  if (!(p > 0.0 && p < 1.0)) throw ValueError("schedule: p must lie in (0, 1)");
  if (!(theta >= 1.0)) throw ValueError("schedule: theta must be at least 1");
  AppxPcaSchedule s;
  s.dim = dim;
  s.delta = delta;
  s.eps = eps;
  s.p = p;
  s.theta = theta;
  s.mode = mode;
  s.practical_floor = practical_floor;
  const double dd = static_cast<double>(dim);
  s.m1 = static_cast<int>(std::ceil(4.0 * std::log(288.0 * dd * theta / (p * p))));
  s.m2 = static_cast<int>(std::ceil(std::log(36.0 * dd * theta / (p * p * eps))));
  s.log_eps1 = -std::log(64.0 * s.m1) + s.m1 * std::log(delta / 48.0);
  s.log_eps2 = std::log(eps / (8.0 * s.m2)) + s.m2 * std::log(delta / 48.0);
  s.max_rounds = static_cast<int>(std::ceil(std::log2(2.0 / delta))) + 8;
  return s;
}

double AppxPcaSchedule::theory_eps1() const { return std::exp(log_eps1); }
double AppxPcaSchedule::theory_eps2() const { return std::exp(log_eps2); }

double AppxPcaSchedule::eps1() const {
  if (mode == ToleranceMode::theory) return theory_eps1();
  return std::max(theory_eps1(), practical_floor * delta);
}

double AppxPcaSchedule::eps2() const {
  if (mode == ToleranceMode::theory) return theory_eps2();
  return std::max(theory_eps2(), practical_floor * delta);
}

Index power_method_iterations(double kappa, double eps, double p, Index dim, double theta) {
  return static_cast<Index>(
      std::ceil(0.5 * kappa * std::log(9.0 * static_cast<double>(dim) * theta / (p * p * eps))));
}

double power_error_amplification(double lambda1, double lambda_d, int t) {
  return 2.0 * t * std::max(1.0, std::pow(lambda1, t)) / std::pow(lambda_d, t);
}

Vector ran_init(const SymmetricOperator& b, std::uint64_t seed) {
  CounterRng rng(seed, 0x1417);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vector v = rng.gaussian_vector(b.dim());
    const double q = v.dot(b * v);
    if (q > 0.0 && std::isfinite(q)) {
      v /= std::sqrt(q);
      return v;
    }
  }
  throw SolverError("random initialization degenerate after 8 attempts");
}

PowerResult inexact_power_run(const SymmetricOperator& b, const InverseOracle& invert, const Vector& w0, Index m) {
  PowerResult res;
  const double n0 = std::sqrt(w0.dot(b * w0));
  if (!(n0 > 0.0)) throw ValueError("inexact_power: start vector has zero B-norm");
  res.w = w0 / n0;
  Vector warm;
  for (Index t = 1; t <= m; ++t) {
    Vector next = invert(res.w, warm, t);
    const double nrm = std::sqrt(std::max(0.0, next.dot(b * next)));
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw SolverError("inexact_power: iterate collapsed");
    warm = next;
    res.w = next / nrm;
    res.last = std::move(next);
    res.last_norm = nrm;
  }
  return res;
}

Vector inexact_power(const SymmetricOperator& b, const InverseOracle& invert, const Vector& w0, Index m) {
  return inexact_power_run(b, invert, w0, m).w;
}

namespace {

// lambda* below this (relative to the unit spectral bound) counts as a zero operator
constexpr double kNegligibleSpectrum = 1e-4;

struct SideState {
  double q = 0.0;
  double delta = 0.0;  // 3/4 / (q - eps1): lies in [3/4, 1] (shift - extreme eigenvalue)
};

}  // namespace

AppxPcaResult appx_pca_pm(const AppxPcaContext& ctx, const AppxPcaSchedule& sched, std::uint64_t seed) {
  if (!ctx.pencil || !ctx.basis) throw ValueError("appx_pca_pm: missing operator context");
  const Pencil& pencil = *ctx.pencil;
  const ImplicitBasis& basis = *ctx.basis;
  const SymmetricOperator& b = pencil.b();
  const MetricBounds mb = pencil.metric_bounds();
  const double root_bmax = std::sqrt(mb.lambda_max);
  const double delta = sched.delta;
  const double eps1 = sched.eps1();
  const double tol1 = eps1 / root_bmax;
  const double tol2 = sched.eps2() / root_bmax;
  const double cap = 4.0 * 96.0 / delta;

  AppxPcaResult res;
  AppxPcaTrace& tr = res.trace;
  tr.seed = seed;
  std::uint64_t solve_id = 0;

  // Solve N^{-1} w at the given shift; side plus means lambda I - M.
  auto make_oracle = [&](double shift, Sign side, SpectrumBounds bounds, double tol) {
    return [&, shift, side, bounds, tol](const Vector& w, const Vector& warm, Index) -> Vector {
      const Sign op_sign = side == Sign::plus ? Sign::minus : Sign::plus;
      ShiftedOperator op(pencil, basis, shift, op_sign, bounds, ctx.backend);
      SolveOptions so;
      so.condition_cap = cap;
      so.seed = CounterRng::derive(seed, 1000 + solve_id);
      Vector x0;
      if (ctx.warm_start && warm.size() == w.size()) {
        // previous raw solve scaled to the current unit iterate
        const double rho = w.dot(b * warm) / std::max(1e-300, w.dot(b * w));
        x0 = rho * w;
        so.x0 = &x0;
      }
      // practical tolerances are relative to the solution scale 1/lower
      const double solve_tol = sched.mode == ToleranceMode::practical ? tol / bounds.lower : tol;
      const SolveResult sr = solve_shifted(op, w, solve_tol, so);
      ++solve_id;
      ++tr.inner_solves;
      tr.inner_matvecs += sr.matvecs;
      tr.agd_iterations += sr.iterations;
      tr.max_condition = std::max(tr.max_condition, bounds.kappa());
      return sr.x;
    };
  };

  const Vector w0 = ran_init(b, CounterRng::derive(seed, 0));
  double lambda = 1.0 + delta;
  tr.lambda0 = lambda;

  SideState a, bside;
  double prev_shift = lambda;
  double prev_delta = 0.0;
  bool first = true;
  // Spectrum bounds of the explicit shifted operator for one side. The
  // previous round's per-side gap proxies bound how close the shift is to
  // that side's extreme eigenvalue.
  auto bounds_for = [&](Sign side, double shift, double extra_lower) -> SpectrumBounds {
    if (first) return {delta, shift + 1.0};
    const SideState& own = side == Sign::plus ? a : bside;
    const SideState& other = side == Sign::plus ? bside : a;
    const double lower = std::max({own.delta - 0.5 * prev_delta, 0.5 * prev_delta, extra_lower});
    const double reach = std::clamp(prev_shift - other.delta, 0.0, 1.0);
    return {lower, shift + reach};
  };

  int s = 0;
  int round_cap = sched.max_rounds;
  double cur_delta = 0.0;
  while (true) {
    ++s;
    if (s > round_cap) {
      throw ScheduleError("shift schedule exceeded " + std::to_string(round_cap) +
                              " rounds (residual operator numerically zero?)",
                          s - 1);
    }
    const SpectrumBounds ba = bounds_for(Sign::plus, lambda, 0.0);
    const SpectrumBounds bb = bounds_for(Sign::minus, lambda, 0.0);
    for (const auto* sb : {&ba, &bb}) {
      if (sb->kappa() > cap) {
        throw ConditioningError("shift " + std::to_string(lambda) + " too close to the spectrum (condition " +
                                std::to_string(sb->kappa()) + ")");
      }
    }
    const auto inv_a = make_oracle(lambda, Sign::plus, ba, tol1);
    const PowerResult pa = inexact_power_run(b, inv_a, w0, sched.m1);
    const Vector va = inv_a(pa.w, pa.last, sched.m1 + 1);
    const auto inv_b = make_oracle(lambda, Sign::minus, bb, tol1);
    const PowerResult pb = inexact_power_run(b, inv_b, w0, sched.m1);
    const Vector vb = inv_b(pb.w, pb.last, sched.m1 + 1);

    a.q = pa.w.dot(b * va);
    bside.q = pb.w.dot(b * vb);
    const double qmax = std::max(a.q, bside.q);
    if (!(qmax - eps1 > 0.0)) throw SolverError("shift update degenerate (quadratic estimate not positive)");
    cur_delta = 0.75 / (qmax - eps1);
    a.delta = a.q - eps1 > 0.0 ? 0.75 / (a.q - eps1) : INFINITY;
    bside.delta = bside.q - eps1 > 0.0 ? 0.75 / (bside.q - eps1) : INFINITY;
    // the gap shrinks by about 5/8 per round, so a small lambda* needs extra rounds
    const double star = std::max(lambda - 1.0 / qmax, kNegligibleSpectrum);
    round_cap = std::max(round_cap, sched.max_rounds + static_cast<int>(std::ceil(1.5 * std::log2(1.0 / star))));

    prev_shift = lambda;
    prev_delta = cur_delta;
    first = false;
    lambda -= 0.5 * cur_delta;

    ShiftRound round;
    round.s = s;
    round.lambda = lambda;
    round.delta = cur_delta;
    round.side = a.q >= bside.q ? Sign::plus : Sign::minus;
    round.qa = a.q;
    round.qb = bside.q;
    tr.rounds.push_back(round);
    if (cur_delta <= delta * lambda / 12.0) break;
  }
  tr.final_lambda = lambda;
  res.sign = a.q >= bside.q ? Sign::plus : Sign::minus;
  const SpectrumBounds bf = bounds_for(res.sign, lambda, delta * lambda / 48.0);
  if (bf.kappa() > cap) {
    throw ConditioningError("final shift too close to the spectrum (condition " + std::to_string(bf.kappa()) + ")");
  }
  const auto inv_f = make_oracle(lambda, res.sign, bf, tol2);
  res.w = inexact_power_run(b, inv_f, w0, sched.m2).w;
  return res;
}

}  // namespace lazy_spectra
