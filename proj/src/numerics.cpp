#include "ncber/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ncber {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2*pi))

// Mills ratio Q(x)/phi(x) via the Gauss continued fraction
// 1/(x + 1/(x + 2/(x + 3/(...)))), evaluated with modified Lentz.
// Accurate to full double precision for x >= 6.
double mills_ratio_cf(double x) {
  const double tiny = 1e-300;
  double f = x > tiny ? x : tiny;
  double c = f;
  double d = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double a = static_cast<double>(k);
    d = x + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

// Acklam's rational approximation to the inverse standard normal CDF.
// Initial guess only; polished by Newton steps in q_inverse.
double inv_norm_cdf_approx(double p) {
  static const double a1 = -39.69683028665376, a2 = 220.9460984245205,
                      a3 = -275.9285104469687, a4 = 138.3577518672690,
                      a5 = -30.66479806614716, a6 = 2.506628277459239;
  static const double b1 = -54.47609879822406, b2 = 161.5858368580409,
                      b3 = -155.6989798598866, b4 = 66.80131188771972,
                      b5 = -13.28068155288572;
  static const double c1 = -7.784894002430293e-03, c2 = -3.223964580411365e-01,
                      c3 = -2.400758277161838, c4 = -2.549732539343734,
                      c5 = 4.374664141464968, c6 = 2.938163982698783;
  static const double d1 = 7.784695709041462e-03, d2 = 3.224671290700398e-01,
                      d3 = 2.445134137142996, d4 = 3.754408661907416;
  const double plow = 0.02425, phigh = 1.0 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
           ((((d1 * q + d2) * q + d3) * q + d4) * q + 1.0);
  }
  if (p > phigh) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c1 * q + c2) * q + c3) * q + c4) * q + c5) * q + c6) /
           ((((d1 * q + d2) * q + d3) * q + d4) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a1 * r + a2) * r + a3) * r + a4) * r + a5) * r + a6) * q /
         (((((b1 * r + b2) * r + b3) * r + b4) * r + b5) * r + 1.0);
}

inline std::uint64_t mix64(std::uint64_t s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double q_function(double x) {
  if (!std::isfinite(x)) throw std::domain_error("q_function: non-finite argument");
  return 0.5 * std::erfc(x * kInvSqrt2);
}

double log_q(double x) {
  if (!std::isfinite(x)) throw std::domain_error("log_q: non-finite argument");
  if (x < 8.0) {
    // Q(8) ~ 6e-16: erfc path has no underflow here.
    return std::log(0.5 * std::erfc(x * kInvSqrt2));
  }
  // log Q = -x^2/2 - log sqrt(2*pi) + log R(x), R the Mills ratio.
  return -0.5 * x * x - kLogSqrt2Pi + std::log(mills_ratio_cf(x));
}

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("q_inverse: argument must lie strictly inside (0,1)");
  // Q(x) = p  <=>  x = Phi^{-1}(1-p).
  double x = inv_norm_cdf_approx(1.0 - p);
  if (!std::isfinite(x)) x = 0.0;
  const double logp = std::log(p);
  // Newton on F(x) = log Q(x) - log p; F'(x) = -phi(x)/Q(x).
  for (int it = 0; it < 60; ++it) {
    const double lq = log_q(x);
    const double log_phi = -0.5 * x * x - kLogSqrt2Pi;
    const double ratio = std::exp(log_phi - lq);  // phi/Q > 0
    const double step = (lq - logp) / ratio;
    x += step;
    if (std::fabs(step) <= 1e-16 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed), id_(stream_id) {
  std::uint64_t s = master_seed ^ mix64(stream_id + 0x632BE59BD9B4E019ULL);
  const std::uint64_t w0 = mix64(s), w1 = mix64(s ^ w0), w2 = mix64(s + w1),
                      w3 = mix64(w0 ^ w2);
  std::seed_seq seq{static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
                    static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
                    static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
                    static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
  eng_.seed(seq);
}

std::uint64_t RngStream::next_u64() { return eng_(); }

double RngStream::uniform() {
  // 53-bit mantissa, strictly inside (0,1) so logs are safe.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

int RngStream::bit() { return static_cast<int>(next_u64() & 1ULL); }

RngStream RngStream::derived(std::uint64_t child) const {
  return RngStream(master_, mix64((id_ ^ (child * 0xD1342543DE82EF95ULL)) + 0x2545F4914F6CDD1DULL));
}

std::complex<double> sample_cn(double variance, RngStream& rng) {
  if (!(variance > 0.0)) throw std::domain_error("sample_cn: variance must be positive");
  const double s = std::sqrt(0.5 * variance);
  const double re = rng.normal();
  const double im = rng.normal();
  return {s * re, s * im};
}

double sample_exp_snr(double mean, RngStream& rng) {
  if (!(mean > 0.0)) throw std::domain_error("sample_exp_snr: mean must be positive");
  return -mean * std::log(rng.uniform());
}

}  // namespace ncber
