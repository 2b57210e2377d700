#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ncber/numerics.hpp"

namespace ncber::netcode {

/// Binary network code: column j of g lists the source bits XOR-combined
/// in slot j, v[j] names the transmitting node (1-based source id). A
/// column of weight one is a direct transmission. Noise density is fixed
/// at N0 = 1 throughout this module, so bit energy equals the average SNR.
struct NetworkCode {
  int k = 0;                        // source count
  int n = 0;                        // slot count
  std::vector<std::vector<int>> g;  // k x n, entries 0/1
  std::vector<int> v;               // length n

  /// The 3-source / 4-slot instance used by the experiments:
  /// rows {1011, 0101, 0010}, schedule {1, 2, 3, 2}.
  static NetworkCode default_code();

  /// Structural checks; returns an empty string when valid, otherwise a
  /// human-readable reason ("empty slot", schedule issues, ...).
  std::string check() const;
  void validate() const;  // throws std::invalid_argument with check() text

  bool direct_slot(int j) const;
  /// Sources whose bits node v[j] must have overheard before slot j.
  std::vector<int> foreign_sources(int j) const;  // 0-based source indices
  /// First slot where `source` is transmitted alone by its own node.
  int direct_slot_of(int source) const;  // -1 when none exists
  int column_parity(int j, const std::vector<int>& bits) const;
};

/// Everything one communication round produces, including genie side
/// information (per-slot relay error probabilities) for the decoders.
struct RoundState {
  std::vector<int> u;                       // source bits
  std::vector<std::complex<double>> h;      // slot gains to the destination
  std::vector<double> gamma;                // instantaneous slot SNRs
  std::vector<int> e;                       // relay error bit folded into slot j
  std::vector<double> p_e;                  // P(e_j = 1); zero for direct slots
  std::vector<std::complex<double>> y;      // destination observations
};

struct InternodeLinkVariance {
  int source = 0;  // 0-based source whose direct transmission is overheard
  int node = 0;    // 0-based listening node
  double variance = 1.0;
};

struct NetworkSimOptions {
  double internode_variance = 1.0;                     // default for every listening link
  std::vector<InternodeLinkVariance> link_overrides;   // sparse per-link values
  double slot_variance = 1.0;                          // node-to-destination links
  bool all_zero_data = false;
};

/// One round: intermediate nodes hard-detect the foreign bits they relay
/// (error bits e_j, probabilities p_e_j from the realized overhearing
/// SNRs), then every slot transmits the XOR prescribed by its column.
RoundState simulate_slots(const NetworkCode& code, double gamma_bar, RngStream& rng,
                          const NetworkSimOptions& opts = {});

/// Exact per-bit MAP decisions marginalizing source bits and relay error
/// patterns with Gaussian slot likelihoods. Ties resolve to bit 0.
std::vector<int> decode_optimal_individual(const NetworkCode& code,
                                           const std::vector<std::complex<double>>& y,
                                           const std::vector<std::complex<double>>& h,
                                           const std::vector<double>& p_e, double energy);

/// Sequence MAP over all 2^k data vectors, marginalizing relay errors.
/// Ties resolve to the lexicographically smallest sequence.
std::vector<int> decode_optimal_joint(const NetworkCode& code,
                                      const std::vector<std::complex<double>>& y,
                                      const std::vector<std::complex<double>>& h,
                                      const std::vector<double>& p_e, double energy);

struct EquivalentObservation {
  std::complex<double> z;
  double gamma_eq = 0.0;  // equals the slot SNR on direct slots
};

/// Matched-filter weighting with the relayed slots scaled by
/// gamma_eq / gamma: z_j = sqrt(E) w_j y_j. Under all-zero data the coded
/// entries are CN(gamma_eq_j, gamma_eq_j^2 / gamma_j); a slot with zero
/// SNR is dropped (zero weight).
std::vector<EquivalentObservation> build_equivalent_observations(
    const NetworkCode& code, const std::vector<std::complex<double>>& y,
    const std::vector<std::complex<double>>& h, const std::vector<double>& gamma,
    const std::vector<double>& p_e, double energy);

/// Per-bit decisions under the equivalent-channel model CN(+-gamma_eq_j,
/// gamma_eq_j); zero-weight slots contribute nothing.
std::vector<int> decode_equiv_individual(const NetworkCode& code,
                                         const std::vector<EquivalentObservation>& z);

/// Sequence decision under the equivalent-channel model; the log
/// likelihood is affine in Re z_j, so this maximizes
/// sum_j (-1)^{u.g_j} Re z_j. Ties resolve lexicographically.
std::vector<int> decode_equiv_joint(const NetworkCode& code,
                                    const std::vector<EquivalentObservation>& z);

/// Dominant-term approximation of the instantaneous error probability of
/// the first source bit under the joint equivalent decoder.
double instantaneous_nc_ber_u1(double g1, double g2, double g4, double g_eq4, double p_e4);

enum class Decoder { OptimalIndividual, OptimalJoint, EquivIndividual, EquivJoint };

struct NetworkBerPoint {
  double snr_db = 0.0;
  std::uint64_t trials = 0;
  bool budget_exhausted = false;
  // errors[d][s]: bit errors of decoder d (input order) on source s.
  std::vector<std::vector<std::uint64_t>> errors;

  double ber(std::size_t decoder, std::size_t source) const {
    return trials ? static_cast<double>(errors[decoder][source]) / static_cast<double>(trials)
                  : 0.0;
  }
  double half_width_95(std::size_t decoder, std::size_t source) const;
};

struct NetworkStopping {
  std::uint64_t min_errors = 200;
  std::uint64_t max_trials = 100'000'000;
};

/// Monte Carlo sweep: every requested decoder runs on the same rounds.
/// A point stops once every (decoder, source) error counter reaches
/// min_errors or the trial budget is spent. Deterministic for any thread
/// count (fixed-size blocks with derived rng streams).
std::vector<NetworkBerPoint> simulate_network(const NetworkCode& code,
                                              const std::vector<double>& snr_grid,
                                              const std::vector<Decoder>& decoders,
                                              const NetworkStopping& stopping,
                                              const RngStream& rng, int threads = 1,
                                              const NetworkSimOptions& opts = {});

}  // namespace ncber::netcode
