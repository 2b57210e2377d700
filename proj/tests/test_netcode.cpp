#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "ncber/chansim.hpp"
#include "ncber/netcode.hpp"
#include "ncber/numerics.hpp"
#include "support.hpp"

using namespace ncber;
using netcode::NetworkCode;
using cplx = std::complex<double>;

namespace {

// Test-side exhaustive MAP decoders for the default 3x4 code, written as
// plain nested loops over the two relayed-slot error bits.
struct BruteResult {
  std::vector<int> individual;
  std::vector<int> joint;
};

BruteResult brute_map(const NetworkCode& code, const std::vector<cplx>& y,
                      const std::vector<cplx>& h, const std::vector<double>& p_e,
                      double energy) {
  const double amp = std::sqrt(energy);
  std::vector<double> score(8);
  std::vector<double> post1(3, 0.0), post0(3, 0.0);
  for (int u = 0; u < 8; ++u) {
    const std::vector<int> bits{(u >> 2) & 1, (u >> 1) & 1, u & 1};
    double total = 0.0;
    for (int e3 = 0; e3 < 2; ++e3) {
      for (int e4 = 0; e4 < 2; ++e4) {
        const std::vector<int> e{0, 0, e3, e4};
        double log_like = 0.0;
        for (int j = 0; j < 4; ++j) {
          const int c = code.column_parity(j, bits) ^ e[j];
          log_like -= std::norm(y[j] - h[j] * (amp * (1.0 - 2.0 * c)));
        }
        const double pe3 = e3 ? p_e[2] : 1.0 - p_e[2];
        const double pe4 = e4 ? p_e[3] : 1.0 - p_e[3];
        total += pe3 * pe4 * std::exp(log_like);
      }
    }
    score[u] = total;
    for (int i = 0; i < 3; ++i) (bits[i] ? post1[i] : post0[i]) += total;
  }
  BruteResult out;
  out.individual.resize(3);
  for (int i = 0; i < 3; ++i) out.individual[i] = post1[i] > post0[i] ? 1 : 0;
  const int best = static_cast<int>(std::max_element(score.begin(), score.end()) - score.begin());
  out.joint = {(best >> 2) & 1, (best >> 1) & 1, best & 1};
  return out;
}

}  // namespace

TEST_CASE("code structure checks") {
  const NetworkCode code = NetworkCode::default_code();
  CHECK(code.check().empty());
  CHECK(code.direct_slot(0));
  CHECK(code.direct_slot(1));
  CHECK_FALSE(code.direct_slot(2));
  CHECK_FALSE(code.direct_slot(3));
  CHECK(code.foreign_sources(2) == std::vector<int>{0});
  CHECK(code.foreign_sources(3) == std::vector<int>{0});
  CHECK(code.direct_slot_of(0) == 0);
  CHECK(code.direct_slot_of(1) == 1);
  CHECK(code.direct_slot_of(2) == -1);

  NetworkCode empty_col = code;
  empty_col.g[0][3] = empty_col.g[1][3] = 0;
  CHECK(empty_col.check().find("empty slot") != std::string::npos);

  NetworkCode not_own = code;
  not_own.v[2] = 2;  // node 2 does not hold bit 3 of column 3
  CHECK_FALSE(not_own.check().empty());

  NetworkCode too_early = code;
  too_early.v = {2, 1, 3, 2};  // slot 1 would relay a bit never sent directly
  CHECK_FALSE(too_early.check().empty());
  CHECK_THROWS_AS(too_early.validate(), std::invalid_argument);
}

TEST_CASE("round structure at very high SNR") {
  const NetworkCode code = NetworkCode::default_code();
  RngStream rng(50, 0);
  const double gbar = 1e12;
  for (int round = 0; round < 100; ++round) {
    const auto st = netcode::simulate_slots(code, gbar, rng);
    // Relaying is effectively error free.
    CHECK(st.e[0] == 0);
    CHECK(st.e[1] == 0);
    CHECK(st.e[2] == 0);
    CHECK(st.e[3] == 0);
    CHECK(st.p_e[0] == 0.0);
    CHECK(st.p_e[1] == 0.0);
    // The third slot carries the XOR of bits one and three.
    const int want = st.u[0] ^ st.u[2];
    const int seen = std::real(std::conj(st.h[2]) * st.y[2]) < 0.0 ? 1 : 0;
    CHECK(seen == want);
    // The first two slots carry the bits uncoded.
    CHECK((std::real(std::conj(st.h[0]) * st.y[0]) < 0.0 ? 1 : 0) == st.u[0]);
    CHECK((std::real(std::conj(st.h[1]) * st.y[1]) < 0.0 ? 1 : 0) == st.u[1]);
  }
}

TEST_CASE("relay error indicator matches its advertised probability") {
  const NetworkCode code = NetworkCode::default_code();
  RngStream rng(51, 0);
  const int n = 200'000;
  double mean_e3 = 0.0, mean_pe3 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto st = netcode::simulate_slots(code, 2.0, rng);
    mean_e3 += st.e[2];
    mean_pe3 += st.p_e[2];
  }
  mean_e3 /= n;
  mean_pe3 /= n;
  // Conditional on the overheard channel the indicator is Bernoulli(p_e3),
  // so the two averages agree to Monte Carlo accuracy.
  CHECK(std::fabs(mean_e3 - mean_pe3) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("exact decoders recover noise-free rounds") {
  const NetworkCode code = NetworkCode::default_code();
  RngStream rng(52, 0);
  for (int round = 0; round < 50; ++round) {
    const auto st = netcode::simulate_slots(code, 1e10, rng);
    const double energy = 1e10;
    CHECK(netcode::decode_optimal_individual(code, st.y, st.h, st.p_e, energy) == st.u);
    CHECK(netcode::decode_optimal_joint(code, st.y, st.h, st.p_e, energy) == st.u);
    const auto z = netcode::build_equivalent_observations(code, st.y, st.h, st.gamma, st.p_e,
                                                          energy);
    CHECK(netcode::decode_equiv_individual(code, z) == st.u);
    CHECK(netcode::decode_equiv_joint(code, z) == st.u);
  }
}

TEST_CASE("exact decoders match an independent exhaustive implementation") {
  const NetworkCode code = NetworkCode::default_code();
  RngStream rng(53, 0);
  const double gbar = 4.0;
  int individual_checked = 0;
  for (int round = 0; round < 400; ++round) {
    const auto st = netcode::simulate_slots(code, gbar, rng);
    const BruteResult brute = brute_map(code, st.y, st.h, st.p_e, gbar);
    CHECK(netcode::decode_optimal_joint(code, st.y, st.h, st.p_e, gbar) == brute.joint);
    CHECK(netcode::decode_optimal_individual(code, st.y, st.h, st.p_e, gbar) ==
          brute.individual);
    ++individual_checked;
  }
  CHECK(individual_checked == 400);
}

TEST_CASE("zero relay-error probability reduces to the error-free decoder") {
  const NetworkCode code = NetworkCode::default_code();
  RngStream rng(54, 0);
  const double gbar = 6.0;
  for (int round = 0; round < 200; ++round) {
    auto st = netcode::simulate_slots(code, gbar, rng);
    // Select rounds whose relays happened to be right, then decode with
    // the error mass removed: the exhaustive error-free rule must agree.
    if (st.e[2] || st.e[3]) continue;
    const std::vector<double> no_err{0.0, 0.0, 0.0, 0.0};
    const BruteResult brute = brute_map(code, st.y, st.h, no_err, gbar);
    CHECK(netcode::decode_optimal_individual(code, st.y, st.h, no_err, gbar) ==
          brute.individual);
    CHECK(netcode::decode_optimal_joint(code, st.y, st.h, no_err, gbar) == brute.joint);
  }
}

TEST_CASE("equivalent observations: weights and moments") {
  const NetworkCode code = NetworkCode::default_code();
  const double gbar = 8.0, energy = gbar;
  const std::vector<cplx> h{{1.1, 0.3}, {0.2, -0.9}, {0.7, 0.7}, {-0.4, 0.8}};
  std::vector<double> gamma(4);
  for (int j = 0; j < 4; ++j) gamma[j] = gbar * std::norm(h[j]);

  SUBCASE("perfect relay gives the plain matched-filter weight") {
    const std::vector<double> p_e{0.0, 0.0, 0.0, 0.0};
    std::vector<cplx> y(4);
    RngStream rng(55, 0);
    for (int j = 0; j < 4; ++j) y[j] = h[j] * std::sqrt(energy) + sample_cn(1.0, rng);
    const auto z = netcode::build_equivalent_observations(code, y, h, gamma, p_e, energy);
    CHECK(z[2].gamma_eq == doctest::Approx(gamma[2]).epsilon(1e-9));
    const cplx plain = std::sqrt(energy) * std::conj(h[2]) * y[2];
    CHECK(std::abs(z[2].z - plain) < 1e-9 * std::abs(plain));
  }

  SUBCASE("useless relay drops the slot") {
    const std::vector<double> p_e{0.0, 0.0, 0.5, 0.5};
    std::vector<cplx> y(4, cplx{1.0, 1.0});
    const auto z = netcode::build_equivalent_observations(code, y, h, gamma, p_e, energy);
    CHECK(z[2].gamma_eq < 1e-15);
    CHECK(z[3].gamma_eq < 1e-15);
    // Bit three has no surviving evidence: tie resolves to zero while the
    // direct bits follow their matched filters.
    auto zz = z;
    zz[0].z = cplx{-3.0, 0.0};
    zz[1].z = cplx{+2.0, 0.0};
    const auto ind = netcode::decode_equiv_individual(code, zz);
    CHECK(ind[0] == 1);
    CHECK(ind[1] == 0);
    CHECK(ind[2] == 0);
  }

  SUBCASE("conditional moments of a relayed entry") {
    const double p_e3 = 0.05;
    const double geq3 = chansim::equivalent_snr(p_e3, gamma[2]);
    RngStream rng(56, 0);
    const int n = 400'000;
    cplx mean = 0.0;
    double var = 0.0;
    const std::vector<double> p_e{0.0, 0.0, p_e3, 0.0};
    for (int i = 0; i < n; ++i) {
      // All-zero data, relay correct: slot 3 carries bit 0.
      std::vector<cplx> y(4);
      for (int j = 0; j < 4; ++j) y[j] = h[j] * std::sqrt(energy) + sample_cn(1.0, rng);
      const auto z = netcode::build_equivalent_observations(code, y, h, gamma, p_e, energy);
      mean += z[2].z;
      var += std::norm(z[2].z);
    }
    mean /= static_cast<double>(n);
    var = var / n - std::norm(mean);
    const double want_var = geq3 * geq3 / gamma[2];
    CHECK(std::abs(mean - cplx{geq3, 0.0}) < 5.0 * std::sqrt(want_var / n));
    CHECK(var == doctest::Approx(want_var).epsilon(0.02));
  }
}

TEST_CASE("pairwise decision statistic matches the conditional tail formula") {
  const NetworkCode code = NetworkCode::default_code();
  const double gbar = 6.0, energy = gbar;
  const std::vector<cplx> h{{0.9, 0.2}, {0.5, -0.5}, {0.8, 0.4}, {-0.3, 1.0}};
  std::vector<double> gamma(4);
  for (int j = 0; j < 4; ++j) gamma[j] = gbar * std::norm(h[j]);
  const std::vector<double> p_e{0.0, 0.0, 0.04, 0.08};
  const double geq3 = chansim::equivalent_snr(p_e[2], gamma[2]);
  const double geq4 = chansim::equivalent_snr(p_e[3], gamma[3]);

  const double mean = gamma[0] + geq3 + geq4;
  const double var = gamma[0] + geq3 * geq3 / gamma[2] + geq4 * geq4 / gamma[3];
  const double predicted = q_function(std::sqrt(2.0) * mean / std::sqrt(var));

  RngStream rng(57, 0);
  const int n = 1'000'000;
  int flips = 0;
  for (int i = 0; i < n; ++i) {
    // All-zero data with no relay errors.
    std::vector<cplx> y(4);
    for (int j = 0; j < 4; ++j) y[j] = h[j] * std::sqrt(energy) + sample_cn(1.0, rng);
    const auto z = netcode::build_equivalent_observations(code, y, h, gamma, p_e, energy);
    // Event that the all-one-in-bit-one vector beats all-zero: the metric
    // difference lives on slots {1,3,4}.
    const double margin = std::real(z[0].z) + std::real(z[2].z) + std::real(z[3].z);
    flips += margin < 0.0;
  }
  const double se = std::sqrt(predicted * (1.0 - predicted) / n);
  CHECK(std::fabs(static_cast<double>(flips) / n - predicted) < 3.0 * se);
}

TEST_CASE("instantaneous first-source expression") {
  // No relay-error mass and matched equivalent SNR: plain two-term form.
  const double g1 = 4.0, g2 = 3.0, g4 = 6.0;
  const double no_err = netcode::instantaneous_nc_ber_u1(g1, g2, g4, g4, 0.0);
  const double s = std::sqrt(g1 + g4);
  const double expected =
      q_function(std::sqrt(2.0) * (g1 + g4) / s) + q_function(std::sqrt(2.0 * (g1 + g2)));
  CHECK(no_err == doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(netcode::instantaneous_nc_ber_u1(-1, 1, 1, 1, 0.1), std::domain_error);
  CHECK_THROWS_AS(netcode::instantaneous_nc_ber_u1(1, 1, 1, 1, 1.5), std::domain_error);
}

TEST_CASE("instantaneous expression bounds the simulated first-source errors") {
  const NetworkCode code = NetworkCode::default_code();
  const double gbar = 8.0, energy = gbar;
  const std::vector<cplx> h{{1.0, 0.1}, {0.8, -0.4}, {0.9, 0.3}, {0.5, 0.9}};
  std::vector<double> gamma(4);
  for (int j = 0; j < 4; ++j) gamma[j] = gbar * std::norm(h[j]);
  const double p_e3 = 0.02, p_e4 = 0.05;
  const double geq4 = chansim::equivalent_snr(p_e4, gamma[3]);
  const std::vector<double> p_e{0.0, 0.0, p_e3, p_e4};
  const double bound = netcode::instantaneous_nc_ber_u1(gamma[0], gamma[1], gamma[3], geq4, p_e4);

  RngStream rng(58, 0);
  const int n = 1'000'000;
  int errors = 0;
  for (int i = 0; i < n; ++i) {
    // All-zero data; relay errors drawn with their advertised probabilities.
    const int e3 = rng.uniform() < p_e3 ? 1 : 0;
    const int e4 = rng.uniform() < p_e4 ? 1 : 0;
    std::vector<cplx> y(4);
    y[0] = h[0] * std::sqrt(energy) + sample_cn(1.0, rng);
    y[1] = h[1] * std::sqrt(energy) + sample_cn(1.0, rng);
    y[2] = h[2] * chansim::bpsk_map(e3, energy) + sample_cn(1.0, rng);
    y[3] = h[3] * chansim::bpsk_map(e4, energy) + sample_cn(1.0, rng);
    const auto z = netcode::build_equivalent_observations(code, y, h, gamma, p_e, energy);
    errors += netcode::decode_equiv_joint(code, z)[0] != 0;
  }
  const double mc = static_cast<double>(errors) / n;
  const double se = std::sqrt(std::max(mc, 1e-12) * (1.0 - mc) / n);
  CHECK(mc <= bound + 3.0 * se);
}

TEST_CASE("all-zero transmission is representative") {
  const NetworkCode code = NetworkCode::default_code();
  const std::vector<double> grid{10.0};
  const netcode::NetworkStopping stop{400, 20'000'000};
  netcode::NetworkSimOptions random_data, zero_data;
  zero_data.all_zero_data = true;
  const auto with_data = netcode::simulate_network(code, grid, {netcode::Decoder::EquivJoint},
                                                   stop, RngStream(59, 0), 2, random_data);
  const auto with_zero = netcode::simulate_network(code, grid, {netcode::Decoder::EquivJoint},
                                                   stop, RngStream(60, 0), 2, zero_data);
  for (int s = 0; s < 3; ++s) {
    const double a = with_data[0].ber(0, s), b = with_zero[0].ber(0, s);
    const double se = std::hypot(with_data[0].half_width_95(0, s) / 1.96,
                                 with_zero[0].half_width_95(0, s) / 1.96);
    CHECK(std::fabs(a - b) <= 2.0 * se);
  }
}

TEST_CASE("network simulation is reproducible for any worker count") {
  const NetworkCode code = NetworkCode::default_code();
  const std::vector<double> grid{3.0};
  const netcode::NetworkStopping stop{50, 500'000};
  const std::vector<netcode::Decoder> decs{netcode::Decoder::OptimalIndividual,
                                           netcode::Decoder::EquivJoint};
  const auto a = netcode::simulate_network(code, grid, decs, stop, RngStream(61, 0), 1);
  const auto b = netcode::simulate_network(code, grid, decs, stop, RngStream(61, 0), 3);
  REQUIRE(a.size() == b.size());
  CHECK(a[0].trials == b[0].trials);
  CHECK(a[0].errors == b[0].errors);
}

TEST_CASE("decoder quality ordering at a single mid-SNR point") {
  const NetworkCode code = NetworkCode::default_code();
  const std::vector<double> grid{10.0};
  const netcode::NetworkStopping stop{300, 30'000'000};
  const std::vector<netcode::Decoder> decs{
      netcode::Decoder::OptimalIndividual, netcode::Decoder::OptimalJoint,
      netcode::Decoder::EquivIndividual, netcode::Decoder::EquivJoint};
  const auto pts = netcode::simulate_network(code, grid, decs, stop, RngStream(62, 0), 2);
  const auto& pt = pts[0];
  for (int s = 0; s < 3; ++s) {
    const double slack2 = [&](std::size_t a, std::size_t b) {
      return 2.0 * std::hypot(pt.half_width_95(a, s) / 1.96, pt.half_width_95(b, s) / 1.96);
    }(0, 1);
    CHECK(pt.ber(0, s) <= pt.ber(1, s) + slack2);
    for (std::size_t d : {2ul, 3ul}) {
      const double slack = 2.0 * std::hypot(pt.half_width_95(1, s) / 1.96,
                                            pt.half_width_95(d, s) / 1.96);
      CHECK(pt.ber(1, s) <= pt.ber(d, s) + slack);
    }
  }
}
