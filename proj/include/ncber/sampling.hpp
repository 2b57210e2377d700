#pragma once

#include <vector>

#include "ncber/netcode.hpp"

namespace ncber::sampling {

/// Family of substituted integrands analyzed by the impulse method.
/// QSqrtAx: Q(sqrt(sum a_i x_i)) after the change of variables x = t^N.
/// MinQ: Q(sqrt(2 min{x,y})); has no isolated interior peak and is handled
/// by the union-bound decomposition in approx_i2 instead.
struct ConstituentFamily {
  enum class Kind { QSqrtAx, MinQ };
  Kind kind = Kind::QSqrtAx;
  std::vector<double> a;      // positive coefficients, one per dimension
  int substitution_n = 1000;  // substitution exponent N

  int dimension() const { return static_cast<int>(a.size()); }
};

/// Peak of the substituted integrand, reported in t^N coordinates, found
/// by a derivative-free simplex search on the log integrand restricted to
/// t in [0.5, 1.5] per dimension. Throws std::runtime_error if the search
/// does not converge within 200 iterations.
std::vector<double> critical_point(const ConstituentFamily& family);

/// Peak of the substituted exponential-density factor: ((N-1)/N) * snr.
double exp_critical_point(int n, double snr);

/// Mass of the impulse approximating the Q-function factor:
/// 1/(2 a1) in one dimension, 3/(4 a1 a2) in two; higher dimensions are
/// integrated numerically over the positive orthant.
double impulse_weight(const ConstituentFamily& family);

/// Impulse approximations of the scalar expectation E[Q(sqrt(X))] with
/// X exponential of mean snr.
double impulse_i0(double snr, double location);  // Q-side impulse at a given peak
double lowsnr_i0(double snr);                    // density-side impulse: Q(sqrt(snr))

/// Piecewise approximation: density-side impulse below snr = 1/8, Q-side
/// impulse above snr = 2, adaptive quadrature in the gap between them.
double approx_i0(double snr);

/// Two-variable impulse approximation of E[Q(sqrt(a1 X + a2 Y))].
double approx_i1(double a1, double a2, double snr);

/// E[Q(sqrt(2 min{X,Y}))] via the union bound split into two scalar
/// impulse terms with coefficient 2.
double approx_i2(double snr);

struct BerTerm {
  double coefficient = 0.0;
  double exponent_const = 0.0;
  int snr_power = 1;
};

/// Sum of coefficient * snr^-power * exp(-const/snr) terms.
struct BerClosedForm {
  std::vector<BerTerm> terms;

  double evaluate(double snr) const;
  int diversity_order() const;      // smallest snr power present
  double coding_gain_sum() const;   // coefficient sum at that power
};

/// Closed-form average end-to-end error rate of the relayed link
/// (unit channel variances, mean SNR gamma_bar on every link).
BerClosedForm approx_canonical_ber(double gamma_bar);

/// Closed-form average error rate of the first source bit under the joint
/// equivalent-channel network decoder.
BerClosedForm approx_nc_ber_u1(double gamma_bar);

/// Mechanized derivation for any source: enumerate competing data
/// vectors, keep the slowest-decaying pairwise terms, and attach the
/// impulse constants of the matching two-variable integrand family.
/// source_index is 1-based; reproduces approx_nc_ber_u1 for source 1.
BerClosedForm approx_nc_ber_generic(
    int source_index, double gamma_bar,
    const netcode::NetworkCode& code = netcode::NetworkCode::default_code());

/// log of the substituted integrand q(t) c(t) f(t) for the scalar family
/// with a = 1 and exponential density of mean snr. Used to check the
/// three-region limit behaviour.
double log_integrand_i0(double t, int n, double snr);

/// Numeric re-derivation of the frozen pair-term constants: the impulse
/// weight (orthant integral of the decaying Q factors) and peak location
/// of the full two-variable integrand.
struct TermConstants {
  double weight = 0.0;
  std::vector<double> location;
  double location_sum() const;
};

TermConstants derive_relay_pair_constants(bool relay_error_branch);
TermConstants derive_direct_pair_constants();
TermConstants derive_single_slot_constants();

}  // namespace ncber::sampling
