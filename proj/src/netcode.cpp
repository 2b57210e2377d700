#include "ncber/netcode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ncber/chansim.hpp"
#include "ncber/mc_runner.hpp"

namespace ncber::netcode {

namespace {
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxSources = 8;
constexpr int kMaxSlots = 16;
constexpr std::uint64_t kBlockSize = 8192;

double logsumexp(const double* terms, int count) {
  double m = kNegInf;
  for (int i = 0; i < count; ++i) m = std::max(m, terms[i]);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (int i = 0; i < count; ++i) s += std::exp(terms[i] - m);
  return m + std::log(s);
}

double internode_variance_for(const NetworkSimOptions& opts, int source, int node) {
  for (const auto& ov : opts.link_overrides)
    if (ov.source == source && ov.node == node) return ov.variance;
  return opts.internode_variance;
}

}  // namespace

NetworkCode NetworkCode::default_code() {
  NetworkCode code;
  code.k = 3;
  code.n = 4;
  code.g = {{1, 0, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 0}};
  code.v = {1, 2, 3, 2};
  return code;
}

std::string NetworkCode::check() const {
  if (k < 1 || n < 1) return "code dimensions must be positive";
  if (k > kMaxSources || n > kMaxSlots) return "code dimensions exceed supported size";
  if (static_cast<int>(g.size()) != k) return "G row count does not match k";
  for (const auto& row : g) {
    if (static_cast<int>(row.size()) != n) return "G column count does not match n";
    for (int b : row)
      if (b != 0 && b != 1) return "G entries must be 0 or 1";
  }
  if (static_cast<int>(v.size()) != n) return "schedule length does not match n";
  for (int j = 0; j < n; ++j) {
    if (v[j] < 1 || v[j] > k) return "schedule entry " + std::to_string(j + 1) + " is not a valid node";
    int weight = 0;
    for (int i = 0; i < k; ++i) weight += g[i][j];
    if (weight == 0) return "G column " + std::to_string(j + 1) + " is an empty slot";
    if (g[v[j] - 1][j] != 1)
      return "slot " + std::to_string(j + 1) + " transmitter does not include its own bit";
  }
  // Every relayed foreign bit must have been heard in an earlier direct slot.
  for (int j = 0; j < n; ++j) {
    for (int i : foreign_sources(j)) {
      const int s = direct_slot_of(i);
      if (s < 0 || s >= j)
        return "slot " + std::to_string(j + 1) + " relays source " + std::to_string(i + 1) +
               " before any direct transmission of it";
    }
  }
  return {};
}

void NetworkCode::validate() const {
  const std::string reason = check();
  if (!reason.empty()) throw std::invalid_argument("NetworkCode: " + reason);
}

bool NetworkCode::direct_slot(int j) const {
  int weight = 0;
  for (int i = 0; i < k; ++i) weight += g[i][j];
  return weight == 1;
}

std::vector<int> NetworkCode::foreign_sources(int j) const {
  std::vector<int> out;
  for (int i = 0; i < k; ++i)
    if (g[i][j] == 1 && i != v[j] - 1) out.push_back(i);
  return out;
}

int NetworkCode::direct_slot_of(int source) const {
  for (int j = 0; j < n; ++j) {
    if (v[j] - 1 != source || g[source][j] != 1) continue;
    if (direct_slot(j)) return j;
  }
  return -1;
}

int NetworkCode::column_parity(int j, const std::vector<int>& bits) const {
  int p = 0;
  for (int i = 0; i < k; ++i) p ^= g[i][j] & bits[i];
  return p;
}

RoundState simulate_slots(const NetworkCode& code, double gamma_bar, RngStream& rng,
                          const NetworkSimOptions& opts) {
  if (!(gamma_bar > 0.0)) throw std::domain_error("simulate_slots: SNR must be positive");
  const double energy = gamma_bar;  // N0 = 1

  RoundState st;
  st.u.assign(code.k, 0);
  if (!opts.all_zero_data)
    for (int i = 0; i < code.k; ++i) st.u[i] = rng.bit();

  st.h.resize(code.n);
  st.gamma.resize(code.n);
  st.e.assign(code.n, 0);
  st.p_e.assign(code.n, 0.0);
  st.y.resize(code.n);

  for (int j = 0; j < code.n; ++j) {
    // Overhearing phase for relayed bits: the transmitting node detected
    // each foreign bit during that bit's direct slot.
    const std::vector<int> foreign = code.foreign_sources(j);
    if (!foreign.empty()) {
      int err = 0;
      double prod = 1.0;
      for (int i : foreign) {
        const double var = internode_variance_for(opts, i, code.v[j] - 1);
        const std::complex<double> h_in = sample_cn(var, rng);
        const double g_in = gamma_bar * std::norm(h_in);
        const std::complex<double> y_in =
            h_in * chansim::bpsk_map(st.u[i], energy) + sample_cn(1.0, rng);
        err ^= (chansim::dmf_detect(y_in, h_in, energy) != st.u[i]) ? 1 : 0;
        prod *= 1.0 - 2.0 * q_function(std::sqrt(2.0 * g_in));
      }
      st.e[j] = err;
      st.p_e[j] = 0.5 * (1.0 - prod);
    }

    st.h[j] = sample_cn(opts.slot_variance, rng);
    st.gamma[j] = gamma_bar * std::norm(st.h[j]);
    const int coded_bit = code.column_parity(j, st.u) ^ st.e[j];
    st.y[j] = st.h[j] * chansim::bpsk_map(coded_bit, energy) + sample_cn(1.0, rng);
  }
  return st;
}

namespace {

// Shared scaffolding for the exact MAP rules: per-(u, e) log joint
// densities with the slot Gaussian likelihoods (N0 = 1).
struct ExactScores {
  int n_u = 0;
  double score[1 << kMaxSources];  // logsumexp over relay error patterns
};

ExactScores exact_scores(const NetworkCode& code, const std::vector<std::complex<double>>& y,
                         const std::vector<std::complex<double>>& h,
                         const std::vector<double>& p_e, double energy) {
  const double amp = std::sqrt(energy);
  double dist[kMaxSlots][2];
  int coded[kMaxSlots];
  int n_coded = 0;
  for (int j = 0; j < code.n; ++j) {
    dist[j][0] = -std::norm(y[j] - h[j] * amp);
    dist[j][1] = -std::norm(y[j] + h[j] * amp);
    if (!code.direct_slot(j)) coded[n_coded++] = j;
  }

  ExactScores out;
  out.n_u = 1 << code.k;
  std::vector<int> bits(code.k, 0);
  double terms[1 << kMaxSlots];
  for (int u = 0; u < out.n_u; ++u) {
    for (int i = 0; i < code.k; ++i) bits[i] = (u >> (code.k - 1 - i)) & 1;
    int par[kMaxSlots];
    for (int j = 0; j < code.n; ++j) par[j] = code.column_parity(j, bits);

    const int n_pat = 1 << n_coded;
    for (int pat = 0; pat < n_pat; ++pat) {
      double ll = 0.0;
      for (int j = 0; j < code.n; ++j) ll += dist[j][par[j]];
      for (int c = 0; c < n_coded; ++c) {
        const int j = coded[c];
        const int e_j = (pat >> c) & 1;
        if (e_j) {
          ll += dist[j][par[j] ^ 1] - dist[j][par[j]];
          ll += p_e[j] > 0.0 ? std::log(p_e[j]) : kNegInf;
        } else {
          ll += p_e[j] < 1.0 ? std::log1p(-p_e[j]) : kNegInf;
        }
      }
      terms[pat] = ll;
    }
    out.score[u] = logsumexp(terms, n_pat);
  }
  return out;
}

std::vector<int> bits_of(int u, int k) {
  std::vector<int> bits(k);
  for (int i = 0; i < k; ++i) bits[i] = (u >> (k - 1 - i)) & 1;
  return bits;
}

}  // namespace

std::vector<int> decode_optimal_individual(const NetworkCode& code,
                                           const std::vector<std::complex<double>>& y,
                                           const std::vector<std::complex<double>>& h,
                                           const std::vector<double>& p_e, double energy) {
  const ExactScores sc = exact_scores(code, y, h, p_e, energy);
  std::vector<int> decided(code.k, 0);
  double terms0[1 << kMaxSources], terms1[1 << kMaxSources];
  for (int i = 0; i < code.k; ++i) {
    int c0 = 0, c1 = 0;
    for (int u = 0; u < sc.n_u; ++u) {
      if ((u >> (code.k - 1 - i)) & 1)
        terms1[c1++] = sc.score[u];
      else
        terms0[c0++] = sc.score[u];
    }
    decided[i] = logsumexp(terms1, c1) > logsumexp(terms0, c0) ? 1 : 0;
  }
  return decided;
}

std::vector<int> decode_optimal_joint(const NetworkCode& code,
                                      const std::vector<std::complex<double>>& y,
                                      const std::vector<std::complex<double>>& h,
                                      const std::vector<double>& p_e, double energy) {
  const ExactScores sc = exact_scores(code, y, h, p_e, energy);
  int best = 0;
  for (int u = 1; u < sc.n_u; ++u)
    if (sc.score[u] > sc.score[best]) best = u;
  return bits_of(best, code.k);
}

std::vector<EquivalentObservation> build_equivalent_observations(
    const NetworkCode& code, const std::vector<std::complex<double>>& y,
    const std::vector<std::complex<double>>& h, const std::vector<double>& gamma,
    const std::vector<double>& p_e, double energy) {
  const double amp = std::sqrt(energy);
  std::vector<EquivalentObservation> out(code.n);
  for (int j = 0; j < code.n; ++j) {
    if (!(gamma[j] > 0.0)) {
      out[j] = {0.0, 0.0};  // dead slot carries no weight
      continue;
    }
    if (code.direct_slot(j)) {
      out[j].gamma_eq = gamma[j];
      out[j].z = amp * std::conj(h[j]) * y[j];
    } else {
      const double geq = chansim::equivalent_snr(p_e[j], gamma[j]);
      out[j].gamma_eq = geq;
      out[j].z = amp * (geq / gamma[j]) * std::conj(h[j]) * y[j];
    }
  }
  return out;
}

std::vector<int> decode_equiv_individual(const NetworkCode& code,
                                         const std::vector<EquivalentObservation>& z) {
  const int n_u = 1 << code.k;
  double score[1 << kMaxSources];
  std::vector<int> bits(code.k, 0);
  for (int u = 0; u < n_u; ++u) {
    for (int i = 0; i < code.k; ++i) bits[i] = (u >> (code.k - 1 - i)) & 1;
    double ll = 0.0;
    for (int j = 0; j < code.n; ++j) {
      if (!(z[j].gamma_eq > 0.0)) continue;
      const double mean = code.column_parity(j, bits) ? -z[j].gamma_eq : z[j].gamma_eq;
      ll += -std::norm(z[j].z - mean) / z[j].gamma_eq;
    }
    score[u] = ll;
  }
  std::vector<int> decided(code.k, 0);
  double terms0[1 << kMaxSources], terms1[1 << kMaxSources];
  for (int i = 0; i < code.k; ++i) {
    int c0 = 0, c1 = 0;
    for (int u = 0; u < n_u; ++u) {
      if ((u >> (code.k - 1 - i)) & 1)
        terms1[c1++] = score[u];
      else
        terms0[c0++] = score[u];
    }
    decided[i] = logsumexp(terms1, c1) > logsumexp(terms0, c0) ? 1 : 0;
  }
  return decided;
}

std::vector<int> decode_equiv_joint(const NetworkCode& code,
                                    const std::vector<EquivalentObservation>& z) {
  const int n_u = 1 << code.k;
  int best = 0;
  double best_score = kNegInf;
  std::vector<int> bits(code.k, 0);
  for (int u = 0; u < n_u; ++u) {
    for (int i = 0; i < code.k; ++i) bits[i] = (u >> (code.k - 1 - i)) & 1;
    double s = 0.0;
    for (int j = 0; j < code.n; ++j) {
      if (!(z[j].gamma_eq > 0.0)) continue;
      const double re = std::real(z[j].z);
      s += code.column_parity(j, bits) ? -re : re;
    }
    if (s > best_score) {
      best_score = s;
      best = u;
    }
  }
  return bits_of(best, code.k);
}

double instantaneous_nc_ber_u1(double g1, double g2, double g4, double g_eq4, double p_e4) {
  if (g1 < 0.0 || g2 < 0.0 || g4 < 0.0 || g_eq4 < 0.0)
    throw std::domain_error("instantaneous_nc_ber_u1: negative SNR");
  if (!(p_e4 >= 0.0 && p_e4 <= 1.0))
    throw std::domain_error("instantaneous_nc_ber_u1: p_e4 outside [0,1]");
  const double var = g1 + (g4 > 0.0 ? g_eq4 * g_eq4 / g4 : 0.0);
  double pair14;
  if (var > 0.0) {
    const double s = std::sqrt(var);
    pair14 = (1.0 - p_e4) * q_function(kSqrt2 * (g1 + g_eq4) / s) +
             p_e4 * q_function(kSqrt2 * (g1 - g_eq4) / s);
  } else {
    pair14 = 0.5;
  }
  const double pair12 = q_function(std::sqrt(2.0 * (g1 + g2)));
  return std::min(1.0, pair14 + pair12);
}

double NetworkBerPoint::half_width_95(std::size_t decoder, std::size_t source) const {
  if (!trials) return 0.0;
  const double p = ber(decoder, source);
  return 1.959963985 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::vector<NetworkBerPoint> simulate_network(const NetworkCode& code,
                                              const std::vector<double>& snr_grid,
                                              const std::vector<Decoder>& decoders,
                                              const NetworkStopping& stopping,
                                              const RngStream& rng, int threads,
                                              const NetworkSimOptions& opts) {
  code.validate();
  if (snr_grid.empty()) throw std::domain_error("simulate_network: empty SNR grid");
  if (decoders.empty()) throw std::domain_error("simulate_network: no decoders requested");

  const std::size_t n_counters = decoders.size() * code.k;
  std::vector<std::size_t> monitored(n_counters);
  for (std::size_t i = 0; i < n_counters; ++i) monitored[i] = i;

  const bool any_equiv =
      std::any_of(decoders.begin(), decoders.end(), [](Decoder d) {
        return d == Decoder::EquivIndividual || d == Decoder::EquivJoint;
      });

  std::vector<NetworkBerPoint> points;
  points.reserve(snr_grid.size());
  for (std::size_t pi = 0; pi < snr_grid.size(); ++pi) {
    const double gbar = snr_grid[pi];
    if (!(gbar > 0.0)) throw std::domain_error("simulate_network: SNR points must be positive");
    const double energy = gbar;  // N0 = 1

    auto block = [&](RngStream& r, std::uint64_t nt, std::vector<std::uint64_t>& counters) {
      for (std::uint64_t t = 0; t < nt; ++t) {
        const RoundState st = simulate_slots(code, gbar, r, opts);
        std::vector<EquivalentObservation> z;
        if (any_equiv)
          z = build_equivalent_observations(code, st.y, st.h, st.gamma, st.p_e, energy);
        for (std::size_t d = 0; d < decoders.size(); ++d) {
          std::vector<int> decided;
          switch (decoders[d]) {
            case Decoder::OptimalIndividual:
              decided = decode_optimal_individual(code, st.y, st.h, st.p_e, energy);
              break;
            case Decoder::OptimalJoint:
              decided = decode_optimal_joint(code, st.y, st.h, st.p_e, energy);
              break;
            case Decoder::EquivIndividual:
              decided = decode_equiv_individual(code, z);
              break;
            case Decoder::EquivJoint:
              decided = decode_equiv_joint(code, z);
              break;
          }
          for (int s = 0; s < code.k; ++s)
            counters[d * code.k + s] += (decided[s] != st.u[s]) ? 1 : 0;
        }
      }
    };

    const detail::McTotals totals =
        detail::run_blocks(n_counters, monitored, stopping.min_errors, stopping.max_trials,
                           kBlockSize, threads, rng.derived(pi), block);

    NetworkBerPoint pt;
    pt.snr_db = 10.0 * std::log10(gbar);
    pt.trials = totals.trials;
    pt.budget_exhausted = totals.budget_exhausted;
    pt.errors.assign(decoders.size(), std::vector<std::uint64_t>(code.k, 0));
    for (std::size_t d = 0; d < decoders.size(); ++d)
      for (int s = 0; s < code.k; ++s) pt.errors[d][s] = totals.errors[d * code.k + s];
    points.push_back(std::move(pt));
  }
  return points;
}

}  // namespace ncber::netcode
