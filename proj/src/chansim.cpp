#include "ncber/chansim.hpp"

#include <cmath>
#include <stdexcept>

#include "ncber/mc_runner.hpp"

namespace ncber::chansim {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr std::uint64_t kBlockSize = 16384;

// Lower clamp keeps Qinv finite; upper clamp stays a hair below 1/2 so a
// useless relay maps to (numerically) zero equivalent SNR.
constexpr double kCombinedLo = 1e-300;
const double kCombinedHi = 0.5 * (1.0 - 1e-12);
}  // namespace

void CanonicalConfig::validate() const {
  if (!(sigma2_sr > 0.0 && sigma2_rd > 0.0 && sigma2_sd > 0.0))
    throw std::domain_error("CanonicalConfig: channel variances must be positive");
  if (!(noise_n0 > 0.0)) throw std::domain_error("CanonicalConfig: noise density must be positive");
}

ChannelRealization ChannelRealization::draw(const CanonicalConfig& cfg, double avg_snr,
                                            RngStream& rng) {
  ChannelRealization ch;
  ch.h_sr = sample_cn(cfg.sigma2_sr, rng);
  ch.h_rd = sample_cn(cfg.sigma2_rd, rng);
  ch.h_sd = sample_cn(cfg.sigma2_sd, rng);
  ch.g_sr = avg_snr * std::norm(ch.h_sr);
  ch.g_rd = avg_snr * std::norm(ch.h_rd);
  ch.g_sd = avg_snr * std::norm(ch.h_sd);
  return ch;
}

double bpsk_map(int bit, double energy) {
  if (bit != 0 && bit != 1) throw std::domain_error("bpsk_map: bit must be 0 or 1");
  if (!(energy > 0.0)) throw std::domain_error("bpsk_map: energy must be positive");
  return std::sqrt(energy) * (1.0 - 2.0 * bit);
}

int dmf_detect(std::complex<double> y, std::complex<double> h, double /*energy*/) {
  // argmin over +-sqrt(E) of |y - h x|^2 reduces to the sign of Re{h* y}.
  const double metric = std::real(std::conj(h) * y);
  return metric < 0.0 ? 1 : 0;
}

double equivalent_snr(double p_first_hop, double gamma_second_hop) {
  if (!(p_first_hop >= 0.0 && p_first_hop <= 1.0))
    throw std::domain_error("equivalent_snr: p_first_hop outside [0,1]");
  if (gamma_second_hop < 0.0)
    throw std::domain_error("equivalent_snr: negative second-hop SNR");
  const double p2 = q_function(std::sqrt(2.0 * gamma_second_hop));
  double combined = (1.0 - p_first_hop) * p2 + (1.0 - p2) * p_first_hop;
  if (combined < kCombinedLo) combined = kCombinedLo;
  if (combined > kCombinedHi) combined = kCombinedHi;
  const double arg = q_inverse(combined);
  return 0.5 * arg * arg;
}

int cmrc_detect(std::complex<double> y_sd, std::complex<double> y_rd,
                std::complex<double> h_sd, std::complex<double> h_rd,
                double gamma_eq, double gamma_rd, double /*energy*/) {
  std::complex<double> combined = std::conj(h_sd) * y_sd;
  if (gamma_rd > 0.0 && gamma_eq > 0.0)
    combined += (gamma_eq / gamma_rd) * std::conj(h_rd) * y_rd;
  // The effective channel w1 h_sd + w2 h_rd is real nonnegative, so the
  // decision is the sign of the combined real part.
  return std::real(combined) < 0.0 ? 1 : 0;
}

double instantaneous_ber_canonical(double g_sr, double g_rd, double g_sd) {
  if (g_sr < 0.0 || g_rd < 0.0 || g_sd < 0.0)
    throw std::domain_error("instantaneous_ber_canonical: negative SNR");
  const double p1 = q_function(std::sqrt(2.0 * g_sr));
  const double geq = g_rd > 0.0 ? equivalent_snr(p1, g_rd) : 0.0;
  const double var = g_sd + (g_rd > 0.0 ? geq * geq / g_rd : 0.0);
  if (var <= 0.0) return 0.5;
  const double s = std::sqrt(var);
  return (1.0 - p1) * q_function(kSqrt2 * (g_sd + geq) / s) +
         p1 * q_function(kSqrt2 * (g_sd - geq) / s);
}

BerCurve simulate_canonical(const CanonicalConfig& cfg, const std::vector<double>& snr_grid,
                            const StoppingRule& stopping, const RngStream& rng, int threads) {
  cfg.validate();
  if (snr_grid.empty()) throw std::domain_error("simulate_canonical: empty SNR grid");

  BerCurve curve;
  curve.reserve(snr_grid.size());
  for (std::size_t pi = 0; pi < snr_grid.size(); ++pi) {
    const double gbar = snr_grid[pi];
    if (!(gbar > 0.0)) throw std::domain_error("simulate_canonical: SNR points must be positive");
    const double energy = gbar * cfg.noise_n0;

    auto block = [&](RngStream& r, std::uint64_t n, std::vector<std::uint64_t>& counters) {
      std::uint64_t errs = 0;
      for (std::uint64_t t = 0; t < n; ++t) {
        const ChannelRealization ch = ChannelRealization::draw(cfg, gbar, r);
        const int bit = r.bit();
        const double x = bpsk_map(bit, energy);
        const std::complex<double> y_sr = ch.h_sr * x + sample_cn(cfg.noise_n0, r);
        const std::complex<double> y_sd = ch.h_sd * x + sample_cn(cfg.noise_n0, r);
        const int relay_bit = dmf_detect(y_sr, ch.h_sr, energy);
        const double x_r = bpsk_map(relay_bit, energy);
        const std::complex<double> y_rd = ch.h_rd * x_r + sample_cn(cfg.noise_n0, r);

        double geq = 0.0;
        if (cfg.relay_enabled) {
          const double p1 = q_function(std::sqrt(2.0 * ch.g_sr));
          geq = equivalent_snr(p1, ch.g_rd);
        }
        const int decided = cmrc_detect(y_sd, y_rd, ch.h_sd, ch.h_rd, geq, ch.g_rd, energy);
        errs += (decided != bit);
      }
      counters[0] += errs;
    };

    const detail::McTotals totals =
        detail::run_blocks(1, {0}, stopping.min_errors, stopping.max_trials, kBlockSize, threads,
                           rng.derived(pi), block);

    BerPoint pt;
    pt.snr_db = 10.0 * std::log10(gbar);
    pt.errors = totals.errors[0];
    pt.trials = totals.trials;
    pt.ber = totals.trials ? static_cast<double>(pt.errors) / static_cast<double>(pt.trials) : 0.0;
    pt.half_width_95 =
        totals.trials ? 1.959963985 * std::sqrt(pt.ber * (1.0 - pt.ber) / static_cast<double>(pt.trials))
                      : 0.0;
    pt.budget_exhausted = totals.budget_exhausted;
    curve.push_back(pt);
  }
  return curve;
}

}  // namespace ncber::chansim
