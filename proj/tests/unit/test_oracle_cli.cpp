#include <doctest.h>

#include <cmath>
#include <sstream>

#include "helpers.hpp"
#include "lazy_spectra/cli.hpp"
#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/io.hpp"
#include "lazy_spectra/oracle.hpp"
#include "lazy_spectra/report.hpp"
#include "lazy_spectra/synthetic.hpp"

#ifndef LAZY_SPECTRA_FIXTURES
#define LAZY_SPECTRA_FIXTURES "tests/fixtures"
#endif

using namespace lazy_spectra;
using test_util::read_text;
using test_util::TempDir;

namespace {

const std::string kFixtures = LAZY_SPECTRA_FIXTURES;

}  // namespace

TEST_CASE("dense_genev: closed forms") {
  DenseMatrix a = DenseMatrix::Zero(2, 2), b = DenseMatrix::Zero(2, 2);
  a.diagonal() << 0.8, 0.1;
  b.diagonal() << 2.0, 1.0;
  const auto s = oracle::dense_genev(a, b);
  CHECK(s.values[0] == doctest::Approx(0.4));
  CHECK(s.values[1] == doctest::Approx(0.1));
  CHECK(std::abs(s.vectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(s.vectors(1, 0)) <= 1e-12);

  DenseMatrix anti = DenseMatrix::Zero(2, 2);
  anti(0, 1) = anti(1, 0) = 0.5;
  const auto p = oracle::dense_genev(anti, DenseMatrix::Identity(2, 2));
  CHECK(p.values[0] == doctest::Approx(0.5));
  CHECK(p.values[1] == doctest::Approx(-0.5));
  CHECK(std::abs(p.vectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(p.vectors(0, 0) * p.vectors(1, 0) > 0.0);
  CHECK(p.vectors(0, 1) * p.vectors(1, 1) < 0.0);
}

TEST_CASE("dense_genev: rejects indefinite B") {
  DenseMatrix b = DenseMatrix::Identity(2, 2);
  b(1, 1) = -1.0;
  CHECK_THROWS_AS(oracle::dense_genev(DenseMatrix::Identity(2, 2), b), PreconditionError);
}

TEST_CASE("lemma suite: zero violations") {
  const auto r = oracle::check_algebra_lemmas(100, 3);
  CHECK(r.projection.instances == 100);
  CHECK(r.wedin.instances == 100);
  CHECK(r.embedding.instances == 100);
  CHECK(r.total_violations() == 0);
  CHECK(r.projection.max_ratio <= 1.0);
}

TEST_CASE("lemma suite: degenerate leakage is zero") {
  // identical matrices: an eigenbasis split into disjoint bands has zero cross leakage
  const DenseMatrix m = synthetic::random_symmetric_unit(8, 4);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
  const DenseMatrix u = es.eigenvectors().leftCols(3), v = es.eigenvectors().rightCols(5);
  CHECK(oracle::spectral_norm(u.transpose() * v) <= 1e-12);
}

TEST_CASE("cli: genev on the diagonal fixture") {
  TempDir dir;
  cli::RunConfig rc;
  rc.command = cli::Command::genev;
  rc.a_path = kFixtures + "/diag_a.mtx";
  rc.b_path = kFixtures + "/identity_b.mtx";
  rc.k = 2;
  rc.mode = "gap-free";
  rc.eps = 0.1;
  rc.seed = 7;
  rc.output = dir.file("out.json");
  std::ostringstream out, err;
  REQUIRE(cli::run(rc, out, err) == 0);
  const auto doc = report::Json::parse(read_text(rc.output));
  CHECK(doc["schema"] == report::kSchema);
  CHECK(doc["kind"] == "genev");
  const auto ev = doc["eigenvalues"];
  REQUIRE(ev.size() == 2);
  const double l1 = ev[0].get<double>(), l2 = ev[1].get<double>();
  CHECK(l1 >= 0.9 * 0.9);
  CHECK(l1 <= 0.9 / 0.9);
  CHECK(l2 <= -0.5 * 0.9);
  CHECK(l2 >= -0.5 / 0.9);
  CHECK(doc["signs"][0] == "+");
  CHECK(doc["signs"][1] == "-");
}

TEST_CASE("cli: exit codes") {
  std::ostringstream out, err;
  cli::RunConfig missing;
  missing.command = cli::Command::genev;
  missing.a_path = "/nonexistent/a.mtx";
  missing.b_path = "/nonexistent/b.mtx";
  missing.eps = 0.1;
  CHECK(cli::run(missing, out, err) == 2);
  CHECK(err.str().find("\"exit_code\":2") != std::string::npos);

  cli::RunConfig no_gap;
  no_gap.command = cli::Command::genev;
  no_gap.a_path = kFixtures + "/diag_a.mtx";
  no_gap.b_path = kFixtures + "/identity_b.mtx";
  no_gap.mode = "gap-dependent";
  CHECK(cli::run(no_gap, out, err) == 2);

  cli::RunConfig bad_backend = no_gap;
  bad_backend.mode = "gap-free";
  bad_backend.eps = 0.1;
  bad_backend.backend = "gpu";
  CHECK(cli::run(bad_backend, out, err) == 2);

  // |A| exceeds B: violates the spectral band precondition
  TempDir dir;
  test_util::write_text(dir.file("big.mtx"), "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 3\n2 2 0.1\n");
  cli::RunConfig band = bad_backend;
  band.backend = "auto";
  band.a_path = dir.file("big.mtx");
  band.b_path = dir.file("eye.mtx");
  save_matrix_market(SymmetricMatrix::identity(2), band.b_path);
  CHECK(cli::run(band, out, err) == 4);
}

TEST_CASE("cli: solver config rules") {
  cli::RunConfig rc;
  rc.mode = "gap-free";
  CHECK_THROWS_AS(cli::solver_config(rc), ValueError);
  rc.eps = 0.1;
  CHECK(cli::solver_config(rc).mode == SpectralMode::gap_free);
  rc.gap = 0.2;
  CHECK_THROWS_AS(cli::solver_config(rc), ValueError);
  rc.mode = "gap-dependent";
  CHECK(cli::solver_config(rc).gap == 0.2);
  rc.mode = "sideways";
  CHECK_THROWS_AS(cli::solver_config(rc), ValueError);
}

TEST_CASE("cli: validate reports zero violations") {
  TempDir dir;
  cli::RunConfig rc;
  rc.command = cli::Command::validate;
  rc.samples = 500;
  rc.seed = 1;
  rc.output = dir.file("v.json");
  std::ostringstream out, err;
  CHECK(cli::run(rc, out, err) == 0);
  const auto doc = report::Json::parse(read_text(rc.output));
  CHECK(doc["kind"] == "validate");
}

TEST_CASE("cli: bench smoke and determinism") {
  const auto summary = cli::bench_gap_scaling({0.4}, 1, 30, 5, true);
  REQUIRE(summary.rows.size() == 1);
  CHECK(summary.rows[0].inner_matvecs > 0);
  CHECK(summary.rows[0].status == "ok");

  std::string csv[2];
  for (auto& text : csv) {
    std::ostringstream s;
    cli::write_bench_csv(cli::bench_gap_scaling({0.4, 0.2}, 2, 30, 5, true), s);
    text = s.str();
  }
  CHECK(csv[0] == csv[1]);
  CHECK(csv[0].rfind("gap,trial,seed,inner_matvecs,rounds,status\n", 0) == 0);
}

TEST_CASE("report: envelope and volatile fields") {
  const report::Json body = {{"x", 1}};
  const auto doc = report::envelope("genev", body, true);
  CHECK(doc.contains("timestamp"));
  CHECK(doc["timestamp"].is_string());
  const auto stripped = report::strip_volatile(doc);
  CHECK_FALSE(stripped.contains("timestamp"));
  CHECK(stripped["x"] == 1);
  CHECK(report::envelope("genev", body, false)["timestamp"].is_null());
}

TEST_CASE("loglog slope") {
  CHECK(cli::loglog_slope({1, 10, 100}, {2, 2 * std::sqrt(10.0), 20}) ==
        doctest::Approx(0.5));
}
