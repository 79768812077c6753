#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lazy_spectra/lazy_ev.hpp"

namespace lazy_spectra::cli {

enum class Command { genev, cca, validate, bench };

struct RunConfig {
  Command command = Command::genev;
  // genev inputs (Matrix Market)
  std::string a_path;
  std::string b_path;
  // cca inputs (CSV or binary datasets)
  std::string x_path;
  std::string y_path;
  double gamma_x = 0.0;
  double gamma_y = 0.0;

  Index k = 1;
  std::string mode = "gap-free";
  std::optional<double> gap;
  std::optional<double> eps;
  std::optional<double> delta;    // multiplicative error override
  std::optional<double> eps_pca;  // inner accuracy override
  double p = 0.1;
  std::uint64_t seed = 0;
  std::string backend = "auto";
  std::string inner = "nested";
  std::string tolerance = "practical";
  std::string output;  // JSON path; stdout when empty
  bool deterministic = false;

  // validate
  Index samples = 500;

  // bench
  std::vector<double> gaps{0.4, 0.1, 0.025};
  Index trials = 10;
  Index bench_dim = 100;
  std::string csv;  // CSV path; stdout when empty
};

// Solver settings implied by a genev/cca RunConfig. Throws InputError
// subclasses on inconsistent flags.
SolverConfig solver_config(const RunConfig& config);

struct BenchRow {
  double gap = 0.0;
  Index trial = 0;
  std::uint64_t seed = 0;
  Index inner_matvecs = 0;
  Index rounds = 0;
  std::string status;
};

struct BenchSummary {
  std::vector<BenchRow> rows;
  std::vector<double> gaps;
  std::vector<double> median_matvecs;  // per gap, over successful trials
  double slope = 0.0;                  // log-log fit of median vs 1/gap
};

// 1-GenEV on planted gap instances; solver errors are recorded per row.
BenchSummary bench_gap_scaling(const std::vector<double>& gaps, Index trials, Index dim, std::uint64_t seed,
                               bool deterministic, double eps = 0.1);
void write_bench_csv(const BenchSummary& summary, std::ostream& out);
// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Executes the command. Returns the process exit status: 0 success,
// 2 input error, 3 solver failure, 4 precondition violation. On failure a
// single JSON line {"error", "kind", "message"} goes to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// One-line machine-readable failure reason.
std::string failure_line(const std::string& kind, int exit_code, const std::string& message);

}  // namespace lazy_spectra::cli
