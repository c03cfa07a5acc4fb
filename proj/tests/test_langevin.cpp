#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qtr/dilation.hpp"
#include "qtr/langevin.hpp"
#include "support/oracles.hpp"

using namespace qtr;

namespace {

TruncatedOperator random_hermitian(oracles::TestRng& rng, int dim, double scale = 1.0) {
  TruncatedOperator h(dim);
  for (int r = 0; r < dim; ++r) {
    h.at(r, r) = Complex{rng.uniform(-scale, scale), 0.0};
    for (int c = r + 1; c < dim; ++c) {
      const Complex z{rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
      h.at(r, c) = z;
      h.at(c, r) = std::conj(z);
    }
  }
  return h;
}

TruncatedOperator random_operator(oracles::TestRng& rng, int dim, double scale = 1.0) {
  TruncatedOperator op(dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      op.at(r, c) = Complex{rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
    }
  }
  return op;
}

}  // namespace

TEST_CASE("commuting observable with no dissipation has zero drift") {
  auto [a, adag] = ladder_operators(8);
  TruncatedOperator number = adag * a;
  LangevinSpec spec{number, TruncatedOperator(8), 1.0};
  CHECK(adjoint_drift(number, spec).max_abs() == 0.0);
}

TEST_CASE("drift of x under the oscillator Hamiltonian is p/m") {
  const int dim = 24;
  const double omega = 1.0;
  auto [x, p] = quadrature_operators(dim, 1.0, omega, 1.0);
  LangevinSpec spec = LangevinSpec::number_conserving(dim, omega);
  TruncatedOperator drift = adjoint_drift(x, spec);
  // Ehrenfest: i[H, x] = p/m away from the truncation edge
  double max_dev = 0.0;
  for (int r = 0; r + 1 < dim; ++r) {
    for (int c = 0; c + 1 < dim; ++c) {
      max_dev = std::max(max_dev, std::abs(drift.at(r, c) - p.at(r, c)));
    }
  }
  CHECK(max_dev < 1e-12);
}

TEST_CASE("the identity is a fixed point for any spec") {
  oracles::TestRng rng(47);
  for (int i = 0; i < 10; ++i) {
    const int dim = 10;
    LangevinSpec spec{random_hermitian(rng, dim), random_operator(rng, dim), 1.0};
    CHECK(adjoint_drift(TruncatedOperator::identity(dim), spec).max_abs() <= 1e-12);
  }
}

TEST_CASE("property: the drift preserves hermiticity") {
  oracles::TestRng rng(53);
  for (int i = 0; i < 25; ++i) {
    const int dim = 9;
    LangevinSpec spec{random_hermitian(rng, dim), random_operator(rng, dim), 1.0};
    TruncatedOperator drift = adjoint_drift(random_hermitian(rng, dim), spec);
    CHECK(drift.is_hermitian(1e-12));
  }
}

TEST_CASE("property: the drift is linear") {
  oracles::TestRng rng(59);
  for (int i = 0; i < 10; ++i) {
    const int dim = 8;
    LangevinSpec spec{random_hermitian(rng, dim), random_operator(rng, dim), 1.0};
    TruncatedOperator z1 = random_hermitian(rng, dim);
    TruncatedOperator z2 = random_hermitian(rng, dim);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    TruncatedOperator combined =
        adjoint_drift(Complex{a, 0.0} * z1 + Complex{b, 0.0} * z2, spec);
    TruncatedOperator split = Complex{a, 0.0} * adjoint_drift(z1, spec) +
                              Complex{b, 0.0} * adjoint_drift(z2, spec);
    TruncatedOperator diff = combined - split;
    CHECK(diff.max_abs() <= 1e-12 * std::max(1.0, split.max_abs()));
  }
}

TEST_CASE("diagonal observables are constant under the default spec") {
  const int dim = 16;
  LangevinSpec spec = LangevinSpec::number_conserving(dim, 2.0);

  TruncatedOperator diag(dim);
  for (int n = 0; n < dim; ++n) diag.at(n, n) = Complex{1.0 / (n + 1.0), 0.0};
  CHECK(check_constant_S(diag, spec) == 0.0);

  DilationSeries series(1.0, 0.5, dim);
  TruncatedOperator s = build_S_operator(series, dim);
  CHECK(check_constant_S(s, spec) <= 1e-12);
}

TEST_CASE("x is not constant under the number-conserving spec") {
  const int dim = 12;
  auto [x, p] = quadrature_operators(dim, 1.0, 1.0, 1.0);
  LangevinSpec spec = LangevinSpec::number_conserving(dim, 1.0);
  CHECK(check_constant_S(x, spec) > 0.1);
}

TEST_CASE("decay makes the diagonal observable drift, reported both ways") {
  const int dim = 16;
  DilationSeries series(1.0, 0.5, dim);
  TruncatedOperator s = build_S_operator(series, dim);
  LangevinSpec spec = LangevinSpec::number_conserving(dim, 1.0);
  auto [a, adag] = ladder_operators(dim);
  spec.jump = a;
  const DriftNorms norms = drift_norms(s, spec);
  CHECK(norms.full > 0.0);
  CHECK(norms.edge_masked > 0.0);
  CHECK(norms.edge_masked <= norms.full);
}

TEST_CASE("pure decay drifts the number operator by -n") {
  const int dim = 16;
  auto [a, adag] = ladder_operators(dim);
  TruncatedOperator number = adag * a;
  LangevinSpec spec{TruncatedOperator(dim), a, 1.0};  // H = 0, c = a
  TruncatedOperator drift = adjoint_drift(number, spec);
  // a^dag (a^dag a) a - {a^dag a, a^dag a}/2 = diag(n(n-1) - n^2) = diag(-n)
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const Complex expected = r == c ? Complex{-static_cast<double>(r), 0.0} : Complex{0.0, 0.0};
      CHECK(std::abs(drift.at(r, c) - expected) <= 1e-12 * dim);
    }
  }
}

TEST_CASE("spec validation") {
  const int dim = 6;
  auto [a, adag] = ladder_operators(dim);
  LangevinSpec bad{a, TruncatedOperator(dim), 1.0};  // a is not hermitian
  CHECK_THROWS_AS(bad.validate(), ParameterError);

  LangevinSpec mismatched{TruncatedOperator::identity(6), TruncatedOperator(8), 1.0};
  CHECK_THROWS_AS(mismatched.validate(), ShapeError);

  LangevinSpec nonpositive{TruncatedOperator::identity(6), TruncatedOperator(6), 0.0};
  CHECK_THROWS_AS(nonpositive.validate(), ParameterError);

  LangevinSpec good = LangevinSpec::number_conserving(dim, 1.0);
  CHECK_THROWS_AS(adjoint_drift(TruncatedOperator::identity(8), good), ShapeError);
  CHECK_THROWS_AS(check_constant_S(a, good), ParameterError);  // non-hermitian observable
}
