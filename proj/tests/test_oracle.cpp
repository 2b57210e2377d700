#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ncber/numerics.hpp"
#include "ncber/oracle.hpp"
#include "support.hpp"

using ncber::oracle::ExpectationProblem;
using ncber::oracle::QuadResult;

namespace {

ExpectationProblem problem1(double mean, double (*f)(double)) {
  ExpectationProblem p;
  p.dimension = 1;
  p.means = {mean, 0, 0};
  p.integrand = [f](const double* x) { return f(x[0]); };
  return p;
}

double one(double) { return 1.0; }
double q_sqrt_2x(double x) { return ncber::q_function(std::sqrt(2.0 * x)); }

}  // namespace

TEST_CASE("density normalization in one, two and three dimensions") {
  for (int dim : {1, 2, 3}) {
    ExpectationProblem p;
    p.dimension = dim;
    p.means = {0.7, 13.0, 250.0};
    p.integrand = [](const double*) { return 1.0; };
    const QuadResult r = ncber::oracle::expect(p, 1e-8);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("flat-fading link expectation against the closed form") {
  const QuadResult r = ncber::oracle::expect(problem1(100.0, q_sqrt_2x), 1e-8);
  CHECK(r.value == doctest::Approx(testref::rayleigh_ber(100.0)).epsilon(1e-8));
  CHECK(r.value == doctest::Approx(2.4814e-3).epsilon(1e-4));
  CHECK(r.abs_error_estimate >= 0.0);
}

TEST_CASE("two-branch combining expectation against the closed form") {
  ExpectationProblem p;
  p.dimension = 2;
  p.means = {100.0, 100.0, 0};
  p.integrand = [](const double* x) {
    return ncber::q_function(std::sqrt(2.0 * x[0] + 2.0 * x[1]));
  };
  const QuadResult r = ncber::oracle::expect(p, 1e-7);
  CHECK(r.value == doctest::Approx(testref::mrc2_ber(100.0)).epsilon(1e-7));
  CHECK(r.value == doctest::Approx(1.844e-5).epsilon(1e-3));
}

TEST_CASE("relayed-link average stays a probability and scales with diversity two") {
  const QuadResult low = ncber::oracle::expect_canonical_ber(1.0, 1e-5);
  CHECK(low.value > 0.0);
  CHECK(low.value < 0.5);

  const QuadResult a = ncber::oracle::expect_canonical_ber(100.0, 1e-4);
  const QuadResult b = ncber::oracle::expect_canonical_ber(1000.0, 1e-4);
  // gamma^2 * value approaches a constant at high SNR.
  const double ca = a.value * 1e4, cb = b.value * 1e6;
  CHECK(std::fabs(cb - ca) / ca < 0.05);
}

TEST_CASE("relayed-link average agrees with the closed-form sum at 20 dB") {
  // Frozen closed-form value of the three-term approximation at 100.
  const double closed_form = (1.0 / 16.0) * std::exp(-1.3049 / 100.0) / 1e4 +
                             (3.0 / 16.0) * std::exp(-1.6394 / 100.0) / 1e4 +
                             (4.0 / 16.0) * std::exp(-3.1301 / 100.0) / 1e4;
  const QuadResult r = ncber::oracle::expect_canonical_ber(100.0, 1e-4);
  CHECK(std::fabs(closed_form - r.value) / r.value < 0.15);
}

TEST_CASE("tightening the tolerance never drifts from the reference") {
  const double ref = testref::rayleigh_ber(50.0);
  double prev_err = 1.0;
  for (double tol : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}) {
    const QuadResult r = ncber::oracle::expect(problem1(50.0, q_sqrt_2x), tol);
    const double err = std::fabs(r.value - ref);
    CHECK(err <= prev_err + 1e-14);
    prev_err = err;
  }
}

TEST_CASE("monotone integrands give expectations monotone in the mean") {
  double prev = 1.0;
  for (double mean : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 200.0}) {
    const QuadResult r = ncber::oracle::expect(problem1(mean, q_sqrt_2x), 1e-8);
    CHECK(r.value < prev);
    prev = r.value;
  }
}

TEST_CASE("tensor rule agrees with nested one-dimensional passes") {
  for (double gbar : {1.0, 10.0, 100.0}) {
    const QuadResult tensor = ncber::oracle::expect_canonical_ber(gbar, 1e-7);
    const QuadResult nested = ncber::oracle::expect_canonical_ber_nested(gbar, 1e-7);
    CHECK(std::fabs(tensor.value - nested.value) / tensor.value < 1e-6);
  }
}

TEST_CASE("orthant integral of the scalar tail function") {
  // integral of Q(sqrt(x)) over [0,inf) equals 1/2.
  auto f = [](const double* x) { return ncber::q_function(std::sqrt(x[0])); };
  const QuadResult r = ncber::oracle::orthant_integral(1, f, {4.0, 0, 0}, 1e-9);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("budget exhaustion carries the best estimate") {
  ExpectationProblem p;
  p.dimension = 3;
  p.means = {1.0, 1.0, 1.0};
  p.integrand = [](const double* x) {
    return 0.5 * (1.0 + std::sin(3e7 * (x[0] + 1.3 * x[1] + 0.7 * x[2])));
  };
  bool thrown = false;
  try {
    ncber::oracle::expect(p, 1e-10);
  } catch (const ncber::oracle::BudgetExceeded& e) {
    thrown = true;
    CHECK(e.best_estimate.evaluations >= 10'000'000);
    CHECK(e.best_estimate.value > 0.0);
    CHECK(e.best_estimate.value < 1.0);
    CHECK(e.best_estimate.abs_error_estimate > 0.0);
  }
  CHECK(thrown);
}

TEST_CASE("tolerance domain is enforced") {
  CHECK_THROWS_AS(ncber::oracle::expect(problem1(1.0, q_sqrt_2x), 1e-11), std::domain_error);
  CHECK_THROWS_AS(ncber::oracle::expect(problem1(1.0, q_sqrt_2x), 0.5), std::domain_error);
  CHECK_THROWS_AS(ncber::oracle::expect_canonical_ber(-1.0, 1e-4), std::domain_error);
}
