#include <iostream>

#include "CLI11.hpp"
#include "lazy_spectra/cli.hpp"

namespace {

void solver_flags(CLI::App* app, lazy_spectra::cli::RunConfig& rc) {
  app->add_option("--k", rc.k, "number of directions")->check(CLI::PositiveNumber);
  app->add_option("--mode", rc.mode, "gap-free or gap-dependent");
  app->add_option("--gap", rc.gap, "relative eigengap (gap-dependent mode)");
  app->add_option("--eps", rc.eps, "accuracy target");
  app->add_option("--delta", rc.delta, "override of the multiplicative error");
  app->add_option("--eps-pca", rc.eps_pca, "override of the inner accuracy");
  app->add_option("--p", rc.p, "failure probability");
  app->add_option("--seed", rc.seed, "random seed");
  app->add_option("--tolerance", rc.tolerance, "practical or theory inner tolerances");
  app->add_option("-o,--output", rc.output, "JSON output path (stdout when omitted)");
  app->add_flag("--deterministic", rc.deterministic, "serial, bit-reproducible kernels");
}

}  // namespace

int main(int argc, char** argv) {
  using lazy_spectra::cli::Command;
  lazy_spectra::cli::RunConfig rc;

  CLI::App app{"Generalized eigenvectors and canonical correlations by shift-and-invert deflation"};
  app.require_subcommand(1);

  auto* genev = app.add_subcommand("genev", "top-k generalized eigenvectors of a pencil (A, B)");
  genev->add_option("--a", rc.a_path, "Matrix Market file of A")->required();
  genev->add_option("--b", rc.b_path, "Matrix Market file of B")->required();
  solver_flags(genev, rc);
  genev->callback([&] { rc.command = Command::genev; });

  auto* cca = app.add_subcommand("cca", "top-k canonical correlation pairs of two views");
  cca->add_option("--x", rc.x_path, "first view (CSV or binary)")->required();
  cca->add_option("--y", rc.y_path, "second view (CSV or binary)")->required();
  cca->add_option("--gamma-x", rc.gamma_x, "ridge on the first view covariance");
  cca->add_option("--gamma-y", rc.gamma_y, "ridge on the second view covariance");
  cca->add_option("--backend", rc.backend, "cg, svrg or auto");
  cca->add_option("--inner", rc.inner, "nested or stochastic shifted solves");
  solver_flags(cca, rc);
  cca->callback([&] { rc.command = Command::cca; });

  auto* validate = app.add_subcommand("validate", "numeric check of the matrix-algebra lemmas");
  validate->add_option("--samples", rc.samples, "instances per lemma");
  validate->add_option("--seed", rc.seed, "random seed");
  validate->add_option("-o,--output", rc.output, "JSON output path");
  validate->callback([&] { rc.command = Command::validate; });

  auto* bench = app.add_subcommand("bench", "inner matvec count against the eigengap");
  bench->add_option("--gaps", rc.gaps, "relative gaps")->delimiter(',');
  bench->add_option("--trials", rc.trials, "trials per gap");
  bench->add_option("--dim", rc.bench_dim, "instance dimension");
  bench->add_option("--eps", rc.eps, "accuracy target");
  bench->add_option("--seed", rc.seed, "random seed");
  bench->add_option("--csv", rc.csv, "CSV output path (stdout when omitted)");
  bench->add_option("-o,--output", rc.output, "JSON summary path");
  bench->add_flag("--deterministic", rc.deterministic, "sequential trials and serial kernels");
  bench->callback([&] { rc.command = Command::bench; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << lazy_spectra::cli::failure_line("usage", 2, e.what()) << '\n';
    return 2;
  }
  return lazy_spectra::cli::run(rc, std::cout, std::cerr);
}
