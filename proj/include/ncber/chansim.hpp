#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ncber/numerics.hpp"

namespace ncber::chansim {

/// Static parameters of the source-relay-destination link. Average SNR
/// is bit_energy / noise_n0; fading variances default to the unit setting
/// assumed by the closed-form analysis.
struct CanonicalConfig {
  double sigma2_sr = 1.0;
  double sigma2_rd = 1.0;
  double sigma2_sd = 1.0;
  double noise_n0 = 1.0;
  bool relay_enabled = true;

  void validate() const;  // throws std::domain_error on nonpositive fields
  bool unit_variances() const {
    return sigma2_sr == 1.0 && sigma2_rd == 1.0 && sigma2_sd == 1.0;
  }
};

/// One quasi-static fading draw: channel gains constant over the two-slot
/// round, instantaneous SNRs derived as gamma = avg_snr * |h|^2.
struct ChannelRealization {
  std::complex<double> h_sr, h_rd, h_sd;
  double g_sr = 0.0, g_rd = 0.0, g_sd = 0.0;

  static ChannelRealization draw(const CanonicalConfig& cfg, double avg_snr, RngStream& rng);
};

struct StoppingRule {
  std::uint64_t min_errors = 200;
  std::uint64_t max_trials = 100'000'000;
};

struct BerPoint {
  double snr_db = 0.0;
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;
  double ber = 0.0;
  double half_width_95 = 0.0;
  bool budget_exhausted = false;  // max_trials hit before min_errors
};

using BerCurve = std::vector<BerPoint>;

/// Antipodal mapping: bit 0 -> +sqrt(E), bit 1 -> -sqrt(E).
double bpsk_map(int bit, double energy);

/// Hard decision minimizing |y - h x|^2 over x = +-sqrt(E); equivalent to
/// the sign of Re{conj(h) y}. Ties resolve to bit 0.
int dmf_detect(std::complex<double> y, std::complex<double> h, double energy);

/// Equivalent single-hop SNR of the two-hop relayed path:
/// gamma_eq = {Qinv((1-p1) p2 + (1-p2) p1)}^2 / 2, p2 = Q(sqrt(2 g2)).
/// The combined probability is clamped to [1e-300, 0.5(1-1e-12)] before
/// inversion, so edge inputs never leave the Qinv domain.
double equivalent_snr(double p_first_hop, double gamma_second_hop);

/// Destination combining: weighted sum with w1 = conj(h_sd) and
/// w2 = (gamma_eq / gamma_rd) conj(h_rd), hard decision over +-sqrt(E).
int cmrc_detect(std::complex<double> y_sd, std::complex<double> y_rd,
                std::complex<double> h_sd, std::complex<double> h_rd,
                double gamma_eq, double gamma_rd, double energy);

/// Two-term instantaneous end-to-end error probability of the combined
/// decision for given instantaneous link SNRs.
double instantaneous_ber_canonical(double g_sr, double g_rd, double g_sd);

/// Monte Carlo sweep over linear-scale average SNR points. Per trial one
/// fresh fading draw (quasi-static round), relay hard detection, combined
/// destination decision. Trials run in fixed-size blocks with per-block
/// derived rng streams; the result is identical for any thread count.
BerCurve simulate_canonical(const CanonicalConfig& cfg, const std::vector<double>& snr_grid,
                            const StoppingRule& stopping, const RngStream& rng, int threads = 1);

}  // namespace ncber::chansim
