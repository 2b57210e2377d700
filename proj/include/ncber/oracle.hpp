#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace ncber::oracle {

/// Expectation E[f(X1..Xd)] of a bounded integrand under independent
/// exponential variables. The integrand receives raw coordinates; the
/// exponential densities are applied internally so callers cannot
/// mismatch the means.
struct ExpectationProblem {
  int dimension = 1;  // 1, 2 or 3
  std::function<double(const double*)> integrand;
  std::array<double, 3> means{1.0, 1.0, 1.0};
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

/// Raised when the evaluation budget runs out before the requested
/// tolerance is met; carries the best estimate reached.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const QuadResult& best)
      : std::runtime_error("quadrature evaluation budget exceeded"), best_estimate(best) {}
  QuadResult best_estimate;
};

/// Adaptive evaluation of the expectation to the requested relative
/// tolerance (accepted range [1e-10, 1e-2]). Semi-infinite axes are
/// mapped to [0,1) by u = x/(x+mean); subdivision is adaptive with a
/// nested Gauss-Kronrod tensor rule and a 1e7-point budget per call.
QuadResult expect(const ExpectationProblem& problem, double rel_tol);

/// Plain integral of f over the positive orthant [0,inf)^dim, same
/// adaptive machinery without the exponential weight. scale[i] sets the
/// substitution pivot per axis (x = scale*u/(1-u)).
QuadResult orthant_integral(int dim, const std::function<double(const double*)>& f,
                            const std::array<double, 3>& scale, double rel_tol);

/// Average end-to-end error rate of the relayed link: the instantaneous
/// two-term expression integrated over the three exponentially
/// distributed link SNRs, each with mean gamma_bar (unit channel
/// variances).
QuadResult expect_canonical_ber(double gamma_bar, double rel_tol);

/// Same expectation computed as three nested one-dimensional adaptive
/// passes. Slower; kept as an independent cross-check of the tensor rule.
QuadResult expect_canonical_ber_nested(double gamma_bar, double rel_tol);

}  // namespace ncber::oracle
