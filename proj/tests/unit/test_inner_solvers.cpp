#include <doctest.h>

#include <cmath>
#include <memory>

#include "helpers.hpp"
#include "lazy_spectra/agd.hpp"
#include "lazy_spectra/cca_problem.hpp"
#include "lazy_spectra/cg.hpp"
#include "lazy_spectra/errors.hpp"
#include "lazy_spectra/oracle.hpp"
#include "lazy_spectra/pencil.hpp"
#include "lazy_spectra/shifted_operator.hpp"
#include "lazy_spectra/svrg.hpp"
#include "lazy_spectra/synthetic.hpp"

using namespace lazy_spectra;
using test_util::random_spd;

namespace {

std::shared_ptr<const SymmetricMatrix> diag_ptr(std::initializer_list<double> values) {
  Vector d(static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) d[i++] = v;
  return std::make_shared<const SymmetricMatrix>(SymmetricMatrix::diagonal(d));
}

}  // namespace

TEST_CASE("cg: closed-form examples") {
  const auto eye = SymmetricMatrix::identity(2);
  Vector rhs(2);
  rhs << 5, -3;
  const auto r1 = conjugate_gradient(eye, rhs, 1e-12);
  CHECK((r1.x - rhs).norm() <= 1e-14);
  CHECK(r1.iterations <= 1);

  Vector d(2);
  d << 2, 4;
  rhs << 2, 4;
  const auto r2 = conjugate_gradient(SymmetricMatrix::diagonal(d), rhs, 1e-12);
  CHECK(r2.x[0] == doctest::Approx(1.0));
  CHECK(r2.x[1] == doctest::Approx(1.0));
}

TEST_CASE("cg: random SPD against dense solve") {
  const DenseMatrix dense = random_spd(20, 31, 0.2);
  const auto b = SymmetricMatrix::from_dense(dense);
  CounterRng rng(31, 1);
  const Vector rhs = rng.gaussian_vector(20);
  const Vector exact = dense.ldlt().solve(rhs);
  const auto r = conjugate_gradient(b, rhs, 1e-10);
  CHECK((r.x - exact).norm() <= 1e-8 * exact.norm());
  CHECK(r.relative_residual <= 1e-10);
}

TEST_CASE("cg: iteration cap reports non-convergence") {
  const Index d = 1000;
  Vector diag(d);
  for (Index i = 0; i < d; ++i) diag[i] = std::pow(1e-6, static_cast<double>(i) / static_cast<double>(d - 1));
  CounterRng rng(32, 1);
  CgOptions opt;
  opt.kappa = 1.0;  // deliberately wrong: caps the iteration count far too low
  CHECK_THROWS_AS(conjugate_gradient(SymmetricMatrix::diagonal(diag), rng.gaussian_vector(d), 1e-14, opt),
                  NonConvergenceError);
}

TEST_CASE("agd: isotropic quadratic converges in one step") {
  QuadraticOracle q;
  q.gradient = [](const Vector& x, Vector& g) { g = x; };
  q.smoothness = 1.0;
  q.strong_convexity = 1.0;
  Vector x0(2);
  x0 << 1, 1;
  const Vector y = agd_inexact(q, x0, 1);
  CHECK(y.norm() == 0.0);
}

TEST_CASE("agd: anisotropic quadratic") {
  QuadraticOracle q;
  q.gradient = [](const Vector& x, Vector& g) {
    g = x;
    g[1] *= 100.0;
  };
  q.smoothness = 100.0;
  q.strong_convexity = 1.0;
  Vector x0(2);
  x0 << 1, 1;
  CHECK(agd_inexact(q, x0, 400).squaredNorm() <= 1e-10);
}

TEST_CASE("agd: noisy gradients reach the noise floor") {
  const double noise = 1e-3, sigma = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CounterRng rng(seed, 5);
    QuadraticOracle q;
    q.gradient = [&](const Vector& x, Vector& g) {
      g = x;
      g[1] *= 100.0;
      Vector e = rng.gaussian_vector(2);
      g += noise * e / e.norm();
    };
    q.smoothness = 100.0;
    q.strong_convexity = sigma;
    q.gradient_error = noise;
    Vector x0(2);
    x0 << 1, 1;
    const Vector y = agd_inexact(q, x0, 400);
    const double f = 0.5 * (y[0] * y[0] + 100.0 * y[1] * y[1]);
    CHECK(f <= 10.0 * noise * noise / sigma);
  }
}

TEST_CASE("solve_shifted: closed-form examples") {
  {
    auto a = std::make_shared<const SymmetricMatrix>(SymmetricMatrix::diagonal(Vector::Zero(2)));
    MatrixPencil pencil(a, std::make_shared<const SymmetricMatrix>(SymmetricMatrix::identity(2)));
    const ImplicitBasis basis(2);
    const ShiftedOperator op(pencil, basis, 2.0, Sign::minus);
    Vector chi(2);
    chi << 3, -1;
    const auto r = solve_shifted(op, chi, 1e-10);
    CHECK((r.x - chi / 2.0).norm() <= 1e-9);
  }
  {
    MatrixPencil pencil(diag_ptr({0.5, 0.0}), std::make_shared<const SymmetricMatrix>(SymmetricMatrix::identity(2)));
    const ImplicitBasis basis(2);
    const ShiftedOperator op(pencil, basis, 1.0, Sign::minus);
    Vector chi(2);
    chi << 1, 1;
    const auto r = solve_shifted(op, chi, 1e-10);
    CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("solve_shifted: CCA instance against dense shifted solve") {
  const auto data = synthetic::planted_cca(100, 5, 5, {0.8, 0.5, 0.2}, 41, synthetic::CcaNoise::sampled);
  auto problem = std::make_shared<const CcaProblem>(data.x, data.y);
  const CcaPencil pencil(problem, Backend::cg);
  const DenseMatrix a = problem->dense_a(), b = problem->dense_b();
  const double sigma1 = oracle::cca_block_spectrum(*problem)[0];
  const double lambda = 1.2 * sigma1;
  const ImplicitBasis basis(problem->dim());
  CounterRng rng(41, 2);
  const Vector chi = rng.gaussian_vector(problem->dim());
  // N = lambda I - B^{-1} A in implicit coordinates, so N^{-1} chi = (lambda B - A)^{-1} B chi
  const Vector exact = (lambda * b - a).ldlt().solve(b * chi);
  const double tol = 1e-8;
  const ShiftedOperator op(pencil, basis, lambda, Sign::minus);
  const auto r = solve_shifted(op, chi, tol);
  const double b_err = std::sqrt((r.x - exact).dot(b * (r.x - exact)));
  CHECK(b_err <= tol);
}

TEST_CASE("solve_shifted: near-singular shift is a conditioning error") {
  MatrixPencil pencil(diag_ptr({0.9, 0.1}), std::make_shared<const SymmetricMatrix>(SymmetricMatrix::identity(2)));
  const ImplicitBasis basis(2);
  SpectrumBounds bounds{1e-9, 1.0};
  const ShiftedOperator op(pencil, basis, 0.9 + 1e-9, Sign::minus, bounds);
  SolveOptions opt;
  opt.condition_cap = 1e4;
  CHECK_THROWS_AS(solve_shifted(op, Vector::Ones(2), 1e-8, opt), ConditioningError);
}

TEST_CASE("svrg_binv_a: trivial examples") {
  const DataMatrix x(1, 1, {1.0}), y(1, 1, {1.0});
  const CcaProblem problem(x, y);
  CHECK(svrg_binv_a(problem, Vector::Zero(2), 1e-10, 1).x.norm() == 0.0);
  Vector w(2);
  w << 1, 0;
  const auto r = svrg_binv_a(problem, w, 1e-10, 1);
  CHECK(std::abs(r.x[0]) <= 1e-9);
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("svrg_binv_a: random instance against dense") {
  const auto data = synthetic::planted_cca(200, 10, 8, {0.9, 0.6, 0.3}, 51, synthetic::CcaNoise::sampled);
  const CcaProblem problem(data.x, data.y);
  CounterRng rng(51, 1);
  const Vector w = rng.gaussian_vector(problem.dim());
  const Vector exact = problem.dense_b().ldlt().solve(problem.dense_a() * w);
  const auto r = svrg_binv_a(problem, w, 1e-8, 51);
  CHECK((r.x - exact).norm() <= 1e-8);
  CHECK(r.error_bound <= 1e-8);
}

TEST_CASE("svrg_shifted_cca: against dense solves with and without deflation") {
  const auto data = synthetic::planted_cca(200, 10, 8, {0.9, 0.6, 0.3}, 61, synthetic::CcaNoise::sampled);
  const CcaProblem problem(data.x, data.y);
  const DenseMatrix a = problem.dense_a(), b = problem.dense_b();
  const auto spec = oracle::dense_genev(a, b);
  const CcaBlockOperator aop(problem, BlockOp::a), bop(problem, BlockOp::b);
  CounterRng rng(61, 3);
  const Vector w = rng.gaussian_vector(problem.dim());
  for (Index nb : {0, 2}) {
    const ImplicitBasis basis = make_basis(bop, spec.vectors.leftCols(nb), &aop);
    const DenseMatrix q = deflation_correction_dense(basis);
    if (nb > 0) {
      const DenseMatrix v = spec.vectors.leftCols(nb);
      const DenseMatrix bv = b * v, av = a * v;
      const DenseMatrix expect =
          bv * av.transpose() + av * bv.transpose() - bv * (v.transpose() * a * v) * bv.transpose();
      CHECK((q - expect).norm() <= 1e-10);
    } else {
      CHECK(q.norm() == 0.0);
    }
    const double lambda = std::abs(spec.values[nb]) + 0.1;
    for (Sign sign : {Sign::minus, Sign::plus}) {
      const DenseMatrix h = lambda * b + sign_value(sign) * (a - q);
      const Vector exact = h.ldlt().solve(b * w);
      const auto r = svrg_shifted_cca(problem, lambda, sign, basis, w, 1e-8, 61);
      CHECK((r.x - exact).norm() <= 1e-7);
    }
  }
}
