#include "lazy_spectra/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/io.hpp"
#include "lazy_spectra/kernels.hpp"
#include "lazy_spectra/lazy_cca.hpp"
#include "lazy_spectra/oracle.hpp"
#include "lazy_spectra/report.hpp"
#include "lazy_spectra/rng.hpp"
#include "lazy_spectra/synthetic.hpp"

namespace lazy_spectra::cli {

using report::Json;

SolverConfig solver_config(const RunConfig& rc) {
  SolverConfig c;
  c.k = rc.k;
  c.mode = parse_mode(rc.mode);
  if (c.mode == SpectralMode::gap_dependent) {
    if (!rc.gap) throw ValueError("gap-dependent mode requires --gap");
    c.gap = *rc.gap;
    if (rc.eps) c.eps = *rc.eps;
  } else {
    if (rc.gap) throw ValueError("gap-free mode takes --eps, not --gap");
    if (!rc.eps) throw ValueError("gap-free mode requires --eps");
    c.eps = *rc.eps;
  }
  if (rc.delta) c.delta = *rc.delta;
  if (rc.eps_pca) c.eps_pca = *rc.eps_pca;
  c.p = rc.p;
  c.seed = rc.seed;
  c.backend = parse_backend(rc.backend);
  if (rc.inner == "nested") {
    c.inner = InnerBackend::nested;
  } else if (rc.inner == "stochastic") {
    c.inner = InnerBackend::stochastic;
  } else {
    throw ValueError("unknown inner solver '" + rc.inner + "' (expected nested or stochastic)");
  }
  if (rc.tolerance == "practical") {
    c.tolerance = ToleranceMode::practical;
  } else if (rc.tolerance == "theory") {
    c.tolerance = ToleranceMode::theory;
  } else {
    throw ValueError("unknown tolerance mode '" + rc.tolerance + "'");
  }
  try {
    c.validate();
  } catch (const PreconditionError& e) {
    throw ValueError(e.what());
  }
  return c;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::nan("");
  const double den = static_cast<double>(m) * sxx - sx * sx;
  if (den == 0.0) return std::nan("");
  return (static_cast<double>(m) * sxy - sx * sy) / den;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

BenchRow bench_trial(double gap, Index trial, std::uint64_t seed, Index dim, double eps) {
  BenchRow row{gap, trial, seed, 0, 0, "ok"};
  try {
    const auto inst = synthetic::gap_instance(dim, gap, seed);
    SolverConfig c;
    c.k = 1;
    c.mode = SpectralMode::gap_dependent;
    c.gap = gap;
    c.eps = eps;
    c.seed = seed;
    const SpectralResult r = lazy_ev(inst.a, inst.b, c);
    row.inner_matvecs = r.inner_matvecs;
    row.rounds = r.traces.empty() ? 0 : static_cast<Index>(r.traces.front().rounds.size());
    if (r.residual_exhausted) row.status = "exhausted";
  } catch (const Error& e) {
    row.status = e.kind();
  } catch (const std::exception&) {
    row.status = "error";
  }
  return row;
}

}  // namespace

BenchSummary bench_gap_scaling(const std::vector<double>& gaps, Index trials, Index dim, std::uint64_t seed,
                               bool deterministic, double eps) {
  if (gaps.empty()) throw ValueError("bench: empty gap list");
  if (trials < 1) throw ValueError("bench: trials must be positive");
  for (double g : gaps)
    if (!(g > 0.0 && g < 1.0)) throw ValueError("bench: gaps must lie in (0, 1)");
  const Index total = static_cast<Index>(gaps.size()) * trials;
  BenchSummary s;
  s.rows.resize(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic) if (!deterministic)
  for (Index i = 0; i < total; ++i) {
    const Index gi = i / trials;
    const Index t = i % trials;
    const std::uint64_t trial_seed = CounterRng::derive(seed, static_cast<std::uint64_t>(gi * 100000 + t));
    s.rows[static_cast<std::size_t>(i)] = bench_trial(gaps[static_cast<std::size_t>(gi)], t, trial_seed, dim, eps);
  }
  s.gaps = gaps;
  for (std::size_t gi = 0; gi < gaps.size(); ++gi) {
    std::vector<double> counts;
    for (const auto& r : s.rows)
      if (r.gap == gaps[gi] && r.status == "ok") counts.push_back(static_cast<double>(r.inner_matvecs));
    s.median_matvecs.push_back(median(counts));
  }
  std::vector<double> inv;
  for (double g : gaps) inv.push_back(1.0 / g);
  s.slope = loglog_slope(inv, s.median_matvecs);
  return s;
}

void write_bench_csv(const BenchSummary& s, std::ostream& out) {
  out << "gap,trial,seed,inner_matvecs,rounds,status\n";
  char buf[64];
  for (const auto& r : s.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", r.gap);
    out << buf << ',' << r.trial << ',' << r.seed << ',' << r.inner_matvecs << ',' << r.rounds << ',' << r.status
        << '\n';
  }
}

std::string failure_line(const std::string& kind, int exit_code, const std::string& message) {
  return Json{{"error", true}, {"kind", kind}, {"exit_code", exit_code}, {"message", message}}.dump();
}

namespace {

void emit(const Json& doc, const RunConfig& rc, std::ostream& out) {
  if (rc.output.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    report::write_json(doc, rc.output);
  }
}

int run_genev(const RunConfig& rc, std::ostream& out) {
  if (rc.a_path.empty() || rc.b_path.empty()) throw ValueError("genev requires --a and --b");
  const SolverConfig cfg = solver_config(rc);
  const SymmetricMatrix a = load_matrix_market(rc.a_path);
  const SymmetricMatrix b = load_matrix_market(rc.b_path);
  if (a.dim() != b.dim()) throw DimensionError("A and B have different dimensions");
  const SpectralResult r = lazy_ev(a, b, cfg);
  emit(report::genev_json(r, {rc.output, true}), rc, out);
  return 0;
}

int run_cca(const RunConfig& rc, std::ostream& out) {
  if (rc.x_path.empty() || rc.y_path.empty()) throw ValueError("cca requires --x and --y");
  const SolverConfig cfg = solver_config(rc);
  const CcaProblem problem = build_cca_problem(load_dataset(rc.x_path), load_dataset(rc.y_path), rc.gamma_x,
                                               rc.gamma_y);
  const CcaResult r = lazy_cca(problem, cfg);
  std::optional<double> leakage;
  if (problem.has_dense() && !r.basis.empty()) {
    // against generalized eigenvectors outside the top 2k
    const DenseMatrix da = problem.dense_a(), db = problem.dense_b();
    const auto spec = oracle::dense_genev(da, db);
    const Index keep = std::min<Index>(r.basis.size(), spec.values.size());
    const DenseMatrix w = spec.vectors.rightCols(spec.values.size() - keep);
    leakage = oracle::subspace_leakage(r.basis.vectors(), db, w);
  }
  emit(report::cca_json(r, {rc.output, true}, leakage), rc, out);
  return 0;
}

int run_validate(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.samples < 1) throw ValueError("validate: samples must be positive");
  const auto rep = oracle::check_algebra_lemmas(rc.samples, rc.seed);
  emit(report::envelope("validate", report::lemma_json(rep), true), rc, out);
  if (rep.total_violations() > 0) {
    err << failure_line("accuracy", 3, std::to_string(rep.total_violations()) + " lemma violations") << '\n';
    return 3;
  }
  return 0;
}

int run_bench(const RunConfig& rc, std::ostream& out) {
  const double eps = rc.eps.value_or(0.1);
  const BenchSummary s = bench_gap_scaling(rc.gaps, rc.trials, rc.bench_dim, rc.seed, rc.deterministic, eps);
  if (rc.csv.empty()) {
    write_bench_csv(s, out);
  } else {
    std::ofstream f(rc.csv, std::ios::binary);
    if (!f) throw InputError("cannot open CSV output: " + rc.csv);
    write_bench_csv(s, f);
  }
  if (!rc.output.empty()) {
    Json body{{"gaps", s.gaps},
              {"median_inner_matvecs", s.median_matvecs},
              {"slope", s.slope},
              {"trials", rc.trials},
              {"dim", rc.bench_dim},
              {"eps", eps},
              {"seed", rc.seed},
              {"csv_path", rc.csv.empty() ? Json(nullptr) : Json(rc.csv)}};
    report::write_json(report::envelope("bench", body, true), rc.output);
  }
  return 0;
}

}  // namespace

int run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  try {
    kernels::set_deterministic(rc.deterministic);
    switch (rc.command) {
      case Command::genev:
        return run_genev(rc, out);
      case Command::cca:
        return run_cca(rc, out);
      case Command::validate:
        return run_validate(rc, out, err);
      case Command::bench:
        return run_bench(rc, out);
    }
    throw ValueError("unknown command");
  } catch (const Error& e) {
    err << failure_line(e.kind(), e.exit_code(), e.what()) << '\n';
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    err << failure_line("memory", 3, "out of memory") << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << failure_line("internal", 3, e.what()) << '\n';
    return 3;
  }
}

}  // namespace lazy_spectra::cli
