#include <doctest.h>

#include <cmath>
#include <random>

#include "dtnembed/errors.hpp"
#include "dtnembed/solver.hpp"

using namespace dtnembed;

namespace {
const CompositeDomain kDomain = make_domain(1.0, 1.5);

MatrixPair make_pair(const Eigen::MatrixXd& lambda, const Eigen::MatrixXd& delta) {
  MatrixPair p;
  p.lambda = lambda;
  p.delta = delta;
  p.kappa = 1.0;
  return p;
}

EigenSolution with_values(std::initializer_list<double> values) {
  EigenSolution s;
  s.values = Eigen::VectorXd::Map(values.begin(), static_cast<Eigen::Index>(values.size()));
  return s;
}
}  // namespace

TEST_CASE("small generalized problems") {
  Eigen::MatrixXd l(2, 2), d(2, 2);
  l << 2, 0, 0, 3;
  auto s = solve_generalized(make_pair(l, Eigen::MatrixXd::Identity(2, 2)));
  CHECK(s.values[0] == doctest::Approx(2.0));
  CHECK(s.values[1] == doctest::Approx(3.0));
  CHECK((s.vectors - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

  l << 2, 1, 1, 2;
  s = solve_generalized(make_pair(l, Eigen::MatrixXd::Identity(2, 2)));
  CHECK(s.values[0] == doctest::Approx(1.0));
  CHECK(s.values[1] == doctest::Approx(3.0));
  for (int g = 0; g < 2; ++g) CHECK(s.vectors.col(g).maxCoeff() > 0.0);

  l << 2, 0, 0, 3;
  d << 2, 0, 0, 1;
  s = solve_generalized(make_pair(l, d));
  CHECK(s.values[0] == doctest::Approx(1.0));
  CHECK(s.values[1] == doctest::Approx(3.0));
  const auto diag = diagnose(make_pair(l, d), s);
  CHECK(diag.residual < 1e-10);
  CHECK(diag.orthonormality < 1e-10);

  d << 1, 0, 0, -1;
  try {
    solve_generalized(make_pair(l, d));
    FAIL("expected MetricNotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MetricNotPositiveDefinite);
  }
  d << 1, 0, 0, 0;
  CHECK_THROWS_AS(solve_generalized(make_pair(l, d), SolverOptions{0.0}), Error);
  // A null direction of the metric is dropped by the truncated factorization.
  s = solve_generalized(make_pair(l, d));
  CHECK(s.rank() == 1);
  CHECK(s.values[0] == doctest::Approx(2.0));
}

TEST_CASE("residual and orthonormality on well-conditioned pairs") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 40;
    Eigen::MatrixXd a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = normal(rng);
        b(i, j) = normal(rng);
      }
    const Eigen::MatrixXd l = 0.5 * (a + a.transpose());
    const Eigen::MatrixXd d = b * b.transpose() / n + Eigen::MatrixXd::Identity(n, n);
    const auto pair = make_pair(l, d);
    const auto s = solve_generalized(pair);
    REQUIRE(s.rank() == n);
    for (int g = 1; g < n; ++g) CHECK(s.values[g] >= s.values[g - 1]);
    const auto diag = diagnose(pair, s);
    CHECK(diag.residual < 1e-10);
    CHECK(diag.orthonormality < 1e-10);
  }
  // The smallest embedding basis is also well conditioned.
  const Assembler assembler(BasisSpec{Parity::Even, 1.0, 1.0, 2, 2}, kDomain);
  for (Method method : {Method::DtN, Method::NtD}) {
    const auto pair = assembler.assemble(method, 2.0116);
    const auto diag = diagnose(pair, solve_generalized(pair));
    CHECK(diag.residual < 1e-10);
    CHECK(diag.orthonormality < 1e-10);
  }
}

TEST_CASE("select_mode") {
  CHECK(select_mode(2.0116 * 2.0116, with_values({-1.0, 4.24, 9.4, 17.0})) == 1);
  CHECK(select_mode(9.4, with_values({4.24, 9.4, 17.0})) == 1);
  CHECK(select_mode(5.0, with_values({4.0, 6.0})) == 0);
  CHECK(select_mode(-3.0, with_values({-2.0, 0.5})) == 1);
  try {
    select_mode(1.0, with_values({-2.0, 0.0}));
    FAIL("expected NoPositiveEigenvalue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoPositiveEigenvalue);
  }
}

TEST_CASE("fixed-point iterates for the first even and odd modes") {
  const Assembler even(BasisSpec{Parity::Even, 1.0, 1.0, 15, 15}, kDomain);
  const Assembler odd(BasisSpec{Parity::Odd, 1.0, 1.0, 15, 15}, kDomain);

  const auto dtn = iterate_mode(even, Method::DtN, 2.0116);
  REQUIRE(dtn.trace.estimates.size() >= 3);
  CHECK(std::abs(dtn.trace.estimates[0] - 2.0633) < 5e-4);
  CHECK(std::abs(dtn.trace.estimates[1] - 2.0611) < 1e-3);
  CHECK(std::abs(dtn.estimate.k_estimate - 2.0611) < 5e-4);
  CHECK(dtn.trace.converged);

  const auto ntd = iterate_mode(even, Method::NtD, 2.0116);
  REQUIRE(ntd.trace.estimates.size() >= 4);
  CHECK(std::abs(ntd.trace.estimates[0] - 2.0487) < 5e-4);
  CHECK(std::abs(ntd.trace.estimates[1] - 2.0604) < 5e-4);
  CHECK(std::abs(ntd.trace.estimates[2] - 2.0611) < 5e-4);
  CHECK(std::abs(ntd.estimate.k_estimate - 2.0611) < 5e-4);

  for (const auto* run : {&dtn, &ntd}) {
    const auto& t = run->trace;
    CHECK(t.kappas.size() == t.estimates.size());
    CHECK(t.kappas.front() == 2.0116);
    for (std::size_t i = 0; i + 1 < t.kappas.size(); ++i) CHECK(t.kappas[i + 1] == t.estimates[i]);
    for (std::size_t i = 2; i < t.estimates.size(); ++i) {
      CHECK(std::abs(t.estimates[i] - t.estimates[i - 1]) <= std::abs(t.estimates[i - 1] - t.estimates[i - 2]));
    }
  }

  const auto dtn_odd = iterate_mode(odd, Method::DtN, 3.3836);
  const auto ntd_odd = iterate_mode(odd, Method::NtD, 3.3836);
  CHECK(std::abs(dtn_odd.estimate.k_estimate - 3.4507) < 5e-4);
  CHECK(std::abs(ntd_odd.estimate.k_estimate - 3.4507) < 5e-4);
  CHECK(std::abs(dtn.estimate.k_estimate - ntd.estimate.k_estimate) < 1e-4);
  CHECK(std::abs(dtn_odd.estimate.k_estimate - ntd_odd.estimate.k_estimate) < 1e-4);
  CHECK(dtn_odd.estimate.parity() == Parity::Odd);
  CHECK(dtn_odd.estimate.gamma2_coeffs.size() == odd.truncation());
}

TEST_CASE("overlap tracking follows the same mode") {
  const Assembler even(BasisSpec{Parity::Even, 1.0, 1.0, 5, 5}, kDomain);
  IterationConfig cfg;
  cfg.tracking = Tracking::Overlap;
  const auto overlap = iterate_mode(even, Method::DtN, 2.9638, cfg);
  const auto nearest = iterate_mode(even, Method::DtN, 2.9638);
  CHECK(std::abs(overlap.estimate.k_estimate - nearest.estimate.k_estimate) < 1e-6);
}

TEST_CASE("non-convergence carries the trace") {
  const Assembler even(BasisSpec{Parity::Even, 1.0, 1.0, 3, 3}, kDomain);
  IterationConfig cfg;
  cfg.max_iter = 1;
  try {
    iterate_mode(even, Method::DtN, 2.0116, cfg);
    FAIL("expected NotConverged");
  } catch (const NotConvergedError& e) {
    CHECK(e.code() == ErrorCode::NotConverged);
    CHECK(e.trace().iterations == 1);
    CHECK(!e.trace().converged);
    CHECK(e.trace().estimates.size() == 1);
  }
  CHECK_THROWS_AS(iterate_mode(even, Method::DtN, 0.0), Error);
}
