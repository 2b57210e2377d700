#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ncber {

/// Gaussian tail probability Q(x) = P(Z > x) for Z ~ N(0,1).
/// Relative error below 1e-12 for |x| <= 8, absolute error below 1e-300 beyond.
/// Throws std::domain_error on non-finite input.
double q_function(double x);

/// log Q(x), numerically stable for large x where Q underflows.
/// Uses the Mills-ratio continued fraction in the far tail.
double log_q(double x);

/// Inverse of q_function on (0,1): q_function(q_inverse(p)) == p to ~1e-13
/// relative. Throws std::domain_error unless 0 < p < 1.
double q_inverse(double p);

/// Reproducible random stream identified by (master_seed, stream_id).
/// Equal identifiers reproduce the identical draw sequence bit for bit;
/// distinct stream_ids give statistically independent streams. A stream
/// must not be shared between threads without external synchronization;
/// derive one stream per worker block instead.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0,1).
  double uniform();
  /// Standard normal deviate (Box-Muller, pair cached).
  double normal();
  /// Fair bit.
  int bit();

  /// Independent child stream; deterministic in (this stream's id, child).
  RngStream derived(std::uint64_t child) const;

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_id() const { return id_; }

 private:
  std::uint64_t master_;
  std::uint64_t id_;
  std::mt19937_64 eng_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Zero-mean circularly symmetric complex Gaussian sample with
/// E[|h|^2] = variance (real and imaginary parts i.i.d. N(0, variance/2)).
std::complex<double> sample_cn(double variance, RngStream& rng);

/// Exponential variate with the given mean. Matches the distribution of
/// mean * |h|^2 / variance for h ~ CN(0, variance).
double sample_exp_snr(double mean, RngStream& rng);

}  // namespace ncber
